#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyne/provenance.hpp"
#include "dyne/reduce.hpp"
#include "dyne/seqmodel.hpp"
#include "dyne/thread_pool.hpp"

namespace dyne {

struct DecodeParams {
    int beam_size = 4;
    /// Maximum generated tokens, EOS included.
    int max_len = 32;
    /// Minimum content tokens before EOS may be chosen.
    int min_len = 0;
    ReduceKind reduce = ReduceKind::mean_logprob;
    double length_penalty_alpha = 0.0;
    /// Forbids any generated n-gram of this order from occurring twice.
    std::optional<int> block_repeat_ngram;
    std::uint64_t seed = 0;

    /// Throws usage error on beam_size < 1, max_len < 1, min_len < 0,
    /// min_len >= max_len, negative alpha or block order < 1.
    void validate() const;
};

/// A live beam entry. `prefix` starts with BOS.
struct Hypothesis {
    TokenSeq prefix;
    double ensemble_score = 0.0;
    std::vector<double> per_input_scores;
    bool finished = false;
};

struct ScoredHypothesis {
    /// Generated tokens without BOS, ending in EOS.
    TokenSeq tokens;
    double raw_score = 0.0;
    double ranked_score = 0.0;
    std::vector<double> per_input_scores;
    TraceMatrix trace;

    /// Tokens before the final EOS.
    std::size_t content_length() const noexcept { return tokens.empty() ? 0 : tokens.size() - 1; }
};

struct EnsembleStep {
    LogProbVector combined;
    std::vector<LogProbVector> per_input;
};

/// Optional knobs that do not change results.
struct DecodeContext {
    /// Runs per-input model calls concurrently when set.
    ThreadPool* pool = nullptr;
    /// Trace column labels; defaults to input_0, input_1, ...
    std::vector<std::string> input_labels;
};

EnsembleStep ensemble_step(const SequenceModel& model, std::span<const TokenSeq> inputs,
                           std::span<const TokenId> prefix, ReduceKind reduce, ThreadPool* pool = nullptr);

/// raw_score / max(1, content_length)^alpha.
double ranked_score(double raw_score, std::size_t content_length, double alpha);

/// Shared-prefix ensemble beam search. Returns finished hypotheses sorted by
/// ranked_score descending (ties: lexicographically smaller tokens first),
/// at most beam_size of them, each with its trace.
std::vector<ScoredHypothesis> beam_search(const SequenceModel& model, std::span<const TokenSeq> inputs,
                                          const DecodeParams& params, const DecodeContext& ctx = {});

/// Exhaustive argmax over every admissible EOS-terminated sequence. Guarded
/// to vocabularies of at most 8 tokens and max_len <= 8.
ScoredHypothesis brute_force_search(const SequenceModel& model, std::span<const TokenSeq> inputs,
                                    const DecodeParams& params, const DecodeContext& ctx = {});

struct SequenceScore {
    double raw_score = 0.0;
    TraceMatrix trace;
};

/// Rescores `tokens` (no BOS, ending in the only EOS) without any masking.
SequenceScore sequence_score(const SequenceModel& model, std::span<const TokenSeq> inputs,
                             std::span<const TokenId> tokens, ReduceKind reduce,
                             const DecodeContext& ctx = {});

}  // namespace dyne
