#include "dyne/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dyne/error.hpp"

namespace dyne {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_inputs(std::span<const TokenSeq> inputs) {
    if (inputs.empty()) fail(ErrorKind::usage, "ensemble needs at least one input");
}

std::vector<std::string> labels_for(std::size_t k, const DecodeContext& ctx) {
    if (!ctx.input_labels.empty()) {
        if (ctx.input_labels.size() != k) {
            fail(ErrorKind::shape, "got " + std::to_string(ctx.input_labels.size()) + " input labels for " +
                                       std::to_string(k) + " inputs");
        }
        return ctx.input_labels;
    }
    std::vector<std::string> labels;
    labels.reserve(k);
    for (std::size_t i = 0; i < k; ++i) labels.push_back("input_" + std::to_string(i));
    return labels;
}

// True when appending `w` to `generated` repeats an n-gram already present.
bool repeats_ngram(std::span<const TokenId> generated, TokenId w, int order) {
    const std::size_t n = static_cast<std::size_t>(order);
    const std::size_t c = generated.size();
    if (c + 1 < n) return false;
    const auto tail = generated.subspan(c + 1 - n);  // n - 1 tokens preceding w
    for (std::size_t p = 0; p + n <= c; ++p) {
        if (generated[p + n - 1] == w && std::equal(tail.begin(), tail.end(), generated.begin() + p)) return true;
    }
    return false;
}

// Admissibility of `w` after `prefix` (BOS + content so far).
bool allowed(const DecodeParams& params, std::span<const TokenId> prefix, TokenId w) {
    if (w == kBos) return false;
    const auto content = static_cast<int>(prefix.size()) - 1;
    if (w == kEos) return content >= params.min_len;
    if (content + 1 > params.max_len - 1) return false;
    if (params.block_repeat_ngram && repeats_ngram(prefix.subspan(1), w, *params.block_repeat_ngram)) return false;
    return true;
}

[[noreturn]] void no_candidates(const DecodeParams& params, std::size_t step) {
    std::string what = "no admissible continuation at step " + std::to_string(step) +
                       ": every token is masked or scores -inf (min_len=" + std::to_string(params.min_len) +
                       ", max_len=" + std::to_string(params.max_len);
    if (params.block_repeat_ngram) what += ", block_repeat_ngram=" + std::to_string(*params.block_repeat_ngram);
    fail(ErrorKind::decode, what + ")");
}

bool better(double score_a, std::span<const TokenId> a, double score_b, std::span<const TokenId> b) {
    if (score_a != score_b) return score_a > score_b;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

ScoredHypothesis finish(const SequenceModel& model, std::span<const TokenSeq> inputs, const DecodeParams& params,
                        const DecodeContext& ctx, TokenSeq tokens, double raw, std::vector<double> per_input) {
    ScoredHypothesis out;
    out.raw_score = raw;
    out.ranked_score = ranked_score(raw, tokens.size() - 1, params.length_penalty_alpha);
    out.per_input_scores = std::move(per_input);
    out.trace = sequence_score(model, inputs, tokens, params.reduce, ctx).trace;
    out.tokens = std::move(tokens);
    return out;
}

}  // namespace

void DecodeParams::validate() const {
    if (beam_size < 1) fail(ErrorKind::usage, "beam_size must be at least 1");
    if (max_len < 1) fail(ErrorKind::usage, "max_len must be at least 1");
    if (min_len < 0) fail(ErrorKind::usage, "min_len must be nonnegative");
    if (min_len >= max_len) fail(ErrorKind::usage, "min_len must be smaller than max_len");
    if (!(length_penalty_alpha >= 0.0) || std::isinf(length_penalty_alpha)) {
        fail(ErrorKind::usage, "length_penalty_alpha must be a nonnegative finite number");
    }
    if (block_repeat_ngram && *block_repeat_ngram < 1) fail(ErrorKind::usage, "block_repeat_ngram must be >= 1");
}

EnsembleStep ensemble_step(const SequenceModel& model, std::span<const TokenSeq> inputs,
                           std::span<const TokenId> prefix, ReduceKind reduce, ThreadPool* pool) {
    check_inputs(inputs);
    EnsembleStep step;
    step.per_input.resize(inputs.size());
    for_each_index(pool, inputs.size(), [&](std::size_t i) { step.per_input[i] = model.score_next(inputs[i], prefix); });
    step.combined = dyne::reduce(reduce, step.per_input);
    return step;
}

double ranked_score(double raw_score, std::size_t content_length, double alpha) {
    if (alpha == 0.0) return raw_score;
    return raw_score / std::pow(static_cast<double>(std::max<std::size_t>(content_length, 1)), alpha);
}

std::vector<ScoredHypothesis> beam_search(const SequenceModel& model, std::span<const TokenSeq> inputs,
                                          const DecodeParams& params, const DecodeContext& ctx) {
    params.validate();
    check_inputs(inputs);
    const std::size_t k = inputs.size();
    const std::size_t vocab_size = model.vocab().size();
    const auto beam = static_cast<std::size_t>(params.beam_size);

    std::vector<Hypothesis> live{Hypothesis{{kBos}, 0.0, std::vector<double>(k, 0.0), false}};
    std::vector<Hypothesis> done;

    struct Candidate {
        double score;
        std::size_t hyp;
        TokenId token;
    };

    for (int step = 0; step < params.max_len && !live.empty(); ++step) {
        // One model call per (hypothesis, input) pair.
        std::vector<LogProbVector> per_input(live.size() * k);
        for_each_index(ctx.pool, per_input.size(), [&](std::size_t j) {
            per_input[j] = model.score_next(inputs[j % k], live[j / k].prefix);
        });

        std::vector<LogProbVector> combined(live.size());
        std::vector<Candidate> candidates;
        for (std::size_t h = 0; h < live.size(); ++h) {
            combined[h] = reduce(params.reduce, std::span(per_input).subspan(h * k, k));
            for (TokenId w = 0; w < vocab_size; ++w) {
                const double v = combined[h][w];
                if (v == kNegInf || !allowed(params, live[h].prefix, w)) continue;
                candidates.push_back({live[h].ensemble_score + v, h, w});
            }
        }
        if (candidates.empty()) {
            if (!done.empty()) break;
            no_candidates(params, static_cast<std::size_t>(step));
        }

        // All live prefixes have equal length, so comparing (prefix, token)
        // is the lexicographic order on the extended sequences.
        std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.hyp != b.hyp) {
                const auto& pa = live[a.hyp].prefix;
                const auto& pb = live[b.hyp].prefix;
                return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
            }
            return a.token < b.token;
        });

        std::vector<Hypothesis> next;
        for (const auto& c : candidates) {
            if (next.size() >= beam) break;
            const Hypothesis& parent = live[c.hyp];
            Hypothesis child{parent.prefix, c.score, parent.per_input_scores, c.token == kEos};
            child.prefix.push_back(c.token);
            for (std::size_t i = 0; i < k; ++i) child.per_input_scores[i] += per_input[c.hyp * k + i][c.token];
            (child.finished ? done : next).push_back(std::move(child));
        }
        live = std::move(next);
        if (done.size() >= beam) break;
    }

    std::vector<ScoredHypothesis> out;
    out.reserve(done.size());
    for (auto& h : done) {
        TokenSeq tokens(h.prefix.begin() + 1, h.prefix.end());
        out.push_back(finish(model, inputs, params, ctx, std::move(tokens), h.ensemble_score,
                             std::move(h.per_input_scores)));
    }
    std::stable_sort(out.begin(), out.end(), [](const ScoredHypothesis& a, const ScoredHypothesis& b) {
        return better(a.ranked_score, a.tokens, b.ranked_score, b.tokens);
    });
    if (out.size() > beam) out.resize(beam);
    return out;
}

ScoredHypothesis brute_force_search(const SequenceModel& model, std::span<const TokenSeq> inputs,
                                    const DecodeParams& params, const DecodeContext& ctx) {
    params.validate();
    check_inputs(inputs);
    const std::size_t vocab_size = model.vocab().size();
    if (vocab_size > 8 || params.max_len > 8) {
        fail(ErrorKind::usage, "brute-force search is limited to |vocab| <= 8 and max_len <= 8");
    }

    bool found = false;
    TokenSeq best_tokens;
    double best_raw = kNegInf;
    double best_ranked = kNegInf;

    TokenSeq prefix{kBos};
    auto visit = [&](auto&& self, double score) -> void {
        const auto step = ensemble_step(model, inputs, prefix, params.reduce, ctx.pool);
        for (TokenId w = 0; w < vocab_size; ++w) {
            const double v = step.combined[w];
            if (v == kNegInf || !allowed(params, prefix, w)) continue;
            prefix.push_back(w);
            if (w == kEos) {
                const std::span<const TokenId> tokens(prefix.begin() + 1, prefix.end());
                const double ranked = ranked_score(score + v, tokens.size() - 1, params.length_penalty_alpha);
                if (!found || better(ranked, tokens, best_ranked, best_tokens)) {
                    found = true;
                    best_tokens.assign(tokens.begin(), tokens.end());
                    best_raw = score + v;
                    best_ranked = ranked;
                }
            } else {
                self(self, score + v);
            }
            prefix.pop_back();
        }
    };
    visit(visit, 0.0);
    if (!found) no_candidates(params, 0);

    auto scored = sequence_score(model, inputs, best_tokens, params.reduce, ctx);
    ScoredHypothesis out;
    out.tokens = std::move(best_tokens);
    out.raw_score = best_raw;
    out.ranked_score = best_ranked;
    out.per_input_scores = input_totals(scored.trace);
    out.trace = std::move(scored.trace);
    return out;
}

SequenceScore sequence_score(const SequenceModel& model, std::span<const TokenSeq> inputs,
                             std::span<const TokenId> tokens, ReduceKind reduce, const DecodeContext& ctx) {
    check_inputs(inputs);
    const Vocab& vocab = model.vocab();
    if (tokens.empty() || tokens.back() != kEos) fail(ErrorKind::input, "sequence must end with EOS");
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        if (!vocab.contains(tokens[t])) {
            fail(ErrorKind::input, "token id " + std::to_string(tokens[t]) + " out of vocabulary range");
        }
        if (tokens[t] == kBos) fail(ErrorKind::input, "sequence contains BOS at position " + std::to_string(t));
        if (tokens[t] == kEos && t + 1 != tokens.size()) {
            fail(ErrorKind::input, "sequence contains EOS before its end at position " + std::to_string(t));
        }
    }

    SequenceScore out;
    out.trace.input_labels = labels_for(inputs.size(), ctx);
    TokenSeq prefix{kBos};
    for (TokenId tok : tokens) {
        const auto step = ensemble_step(model, inputs, prefix, reduce, ctx.pool);
        std::vector<double> cells(inputs.size());
        for (std::size_t i = 0; i < inputs.size(); ++i) cells[i] = step.per_input[i][tok];
        out.raw_score += step.combined[tok];
        record_step(out.trace, tok, vocab.token(tok), step.combined[tok], std::move(cells));
        prefix.push_back(tok);
    }
    return out;
}

}  // namespace dyne
