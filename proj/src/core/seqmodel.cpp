#include "dyne/seqmodel.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "dyne/error.hpp"
#include "dyne/text_util.hpp"

namespace dyne {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class ToyModel final : public SequenceModel {
public:
    explicit ToyModel(ToyModelSpec spec) : spec_(std::move(spec)) {
        spec_.validate();
        const std::size_t v = spec_.vocab.size();
        const double k = spec_.smooth_k;
        const double alphabet = static_cast<double>(v - 1);
        bigram_.assign(v * v, 0.0);
        std::vector<double> row_total(v, 0.0);
        for (const auto& [key, count] : spec_.bigram_counts) {
            bigram_[key.first * v + key.second] += static_cast<double>(count);
            row_total[key.first] += static_cast<double>(count);
        }
        for (std::size_t prev = 0; prev < v; ++prev) {
            const double denom = row_total[prev] + k * alphabet;
            double* row = &bigram_[prev * v];
            row[kBos] = 0.0;
            for (std::size_t w = 1; w < v; ++w) row[w] = (row[w] + k) / denom;
        }
    }

    const Vocab& vocab() const noexcept override { return spec_.vocab; }

    LogProbVector score_next(std::span<const TokenId> input,
                             std::span<const TokenId> prefix) const override {
        check_model_arguments(spec_.vocab, input, prefix);
        const std::size_t v = spec_.vocab.size();
        const double k = spec_.smooth_k;
        const double lambda = spec_.lambda;

        std::vector<double> counts(v, 0.0);
        for (auto id : input) counts[id] += 1.0;
        const double copy_denom = static_cast<double>(input.size()) + k * static_cast<double>(v - 1);
        const double* bigram = &bigram_[prefix.back() * v];

        LogProbVector out(v);
        out[kBos] = kNegInf;
        for (std::size_t w = 1; w < v; ++w) {
            const double copy = (counts[w] + k) / copy_denom;
            out[w] = std::log(lambda * copy + (1.0 - lambda) * bigram[w]);
        }
        return out;
    }

private:
    ToyModelSpec spec_;
    std::vector<double> bigram_;  // row-major [prev][next], linear space
};

class FixedModel final : public SequenceModel {
public:
    FixedModel(Vocab vocab, LogProbVector logp) : vocab_(std::move(vocab)), logp_(std::move(logp)) {}

    const Vocab& vocab() const noexcept override { return vocab_; }

    LogProbVector score_next(std::span<const TokenId> input,
                             std::span<const TokenId> prefix) const override {
        check_model_arguments(vocab_, input, prefix);
        return logp_;
    }

private:
    Vocab vocab_;
    LogProbVector logp_;
};

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void format_error(std::size_t line, const std::string& what) {
    fail(ErrorKind::format, "toy model spec line " + std::to_string(line) + ": " + what);
}

}  // namespace

void check_model_arguments(const Vocab& vocab, std::span<const TokenId> input,
                           std::span<const TokenId> prefix) {
    if (input.empty()) fail(ErrorKind::input, "model input is empty");
    if (prefix.empty() || prefix.front() != kBos) fail(ErrorKind::input, "prefix must start with BOS");
    for (auto id : input) {
        if (!vocab.contains(id)) {
            fail(ErrorKind::input, "input token id " + std::to_string(id) + " out of vocabulary range " +
                                       std::to_string(vocab.size()));
        }
        if (id == kBos) fail(ErrorKind::input, "input contains BOS");
    }
    for (auto id : prefix) {
        if (!vocab.contains(id)) {
            fail(ErrorKind::input, "prefix token id " + std::to_string(id) + " out of vocabulary range " +
                                       std::to_string(vocab.size()));
        }
    }
}

void ToyModelSpec::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        fail(ErrorKind::validation, "lambda must lie in [0,1], got " + format_double(lambda));
    }
    if (!(smooth_k > 0.0) || std::isinf(smooth_k)) {
        fail(ErrorKind::validation, "smooth_k must be positive and finite, got " + format_double(smooth_k));
    }
    for (const auto& [key, count] : bigram_counts) {
        if (!vocab.contains(key.first) || !vocab.contains(key.second)) {
            fail(ErrorKind::validation, "bigram references an id outside the vocabulary");
        }
        if (key.second == kBos) fail(ErrorKind::validation, "bigram predicts BOS");
        if (key.first == kEos) fail(ErrorKind::validation, "bigram continues after EOS");
    }
}

std::string serialize_toy_spec(const ToyModelSpec& spec) {
    std::ostringstream out;
    out << "# dyne toy model\n";
    out << "lambda " << format_double(spec.lambda) << '\n';
    out << "smooth_k " << format_double(spec.smooth_k) << '\n';
    out << "vocab";
    for (const auto& t : spec.vocab.tokens()) out << ' ' << t;
    out << '\n';
    for (const auto& [key, count] : spec.bigram_counts) {
        out << "bigram " << spec.vocab.token(key.first) << ' ' << spec.vocab.token(key.second) << ' '
            << count << '\n';
    }
    out << "end\n";
    return out.str();
}

ToyModelSpec parse_toy_spec(std::string_view text) {
    std::optional<double> lambda;
    std::optional<double> smooth_k;
    std::optional<std::vector<std::string>> vocab_tokens;
    struct RawBigram {
        std::size_t line;
        std::string prev, next;
        std::uint64_t count;
    };
    std::vector<RawBigram> bigrams;
    bool ended = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (ended) format_error(line_no, "content after 'end'");
        auto fields = split_whitespace(line);
        const std::string key(fields.front());
        auto scalar = [&](std::optional<double>& slot) {
            if (slot) format_error(line_no, "duplicate field '" + key + "'");
            if (fields.size() != 2) format_error(line_no, "field '" + key + "' expects one value");
            slot = parse_double(fields[1]);
            if (!slot) format_error(line_no, "field '" + key + "' has non-numeric value '" + std::string(fields[1]) + "'");
        };
        if (key == "lambda") {
            scalar(lambda);
        } else if (key == "smooth_k") {
            scalar(smooth_k);
        } else if (key == "vocab") {
            if (vocab_tokens) format_error(line_no, "duplicate field 'vocab'");
            vocab_tokens.emplace(fields.begin() + 1, fields.end());
        } else if (key == "bigram") {
            if (fields.size() != 4) format_error(line_no, "field 'bigram' expects prev next count");
            auto count = parse_u64(fields[3]);
            if (!count) format_error(line_no, "field 'bigram' has invalid count '" + std::string(fields[3]) + "'");
            bigrams.push_back({line_no, std::string(fields[1]), std::string(fields[2]), *count});
        } else if (key == "end") {
            if (fields.size() != 1) format_error(line_no, "field 'end' takes no value");
            ended = true;
        } else {
            format_error(line_no, "unknown field '" + key + "'");
        }
    }

    auto missing = [&](const char* name) {
        fail(ErrorKind::format, "toy model spec: missing field '" + std::string(name) + "' (file ends at line " +
                                    std::to_string(line_no) + ")");
    };
    if (!lambda) missing("lambda");
    if (!smooth_k) missing("smooth_k");
    if (!vocab_tokens) missing("vocab");
    if (!ended) missing("end");

    ToyModelSpec spec;
    spec.lambda = *lambda;
    spec.smooth_k = *smooth_k;
    spec.vocab = Vocab(std::move(*vocab_tokens));
    for (const auto& b : bigrams) {
        auto prev = spec.vocab.find(b.prev);
        auto next = spec.vocab.find(b.next);
        if (!prev || !next) {
            format_error(b.line, "bigram token '" + (prev ? b.next : b.prev) + "' not in vocab");
        }
        if (!spec.bigram_counts.emplace(std::pair{*prev, *next}, b.count).second) {
            format_error(b.line, "duplicate bigram " + b.prev + " " + b.next);
        }
    }
    spec.validate();
    return spec;
}

void save_toy_spec(const ToyModelSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out << serialize_toy_spec(spec);
    if (!out) fail(ErrorKind::io, "failed writing " + path.string());
}

SequenceModelHandle make_toy_model(ToyModelSpec spec) {
    return std::make_shared<const ToyModel>(std::move(spec));
}

SequenceModelHandle make_uniform_model(Vocab vocab) {
    const double lp = -std::log(static_cast<double>(vocab.size() - 1));
    LogProbVector logp(vocab.size(), lp);
    logp[kBos] = kNegInf;
    return std::make_shared<const FixedModel>(std::move(vocab), std::move(logp));
}

SequenceModelHandle make_fixed_model(Vocab vocab, const std::vector<double>& probs) {
    if (probs.size() != vocab.size()) {
        fail(ErrorKind::shape, "fixed model needs " + std::to_string(vocab.size()) + " probabilities, got " +
                                   std::to_string(probs.size()));
    }
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::validation, "fixed model probability outside [0,1]");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) fail(ErrorKind::validation, "fixed model probabilities do not sum to 1");
    if (probs[kBos] != 0.0) fail(ErrorKind::validation, "fixed model must give BOS probability 0");
    LogProbVector logp(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) logp[i] = std::log(probs[i]);
    return std::make_shared<const FixedModel>(std::move(vocab), std::move(logp));
}

SequenceModelHandle load_model(const std::filesystem::path& path, std::string_view kind) {
    if (kind != "toy" && kind != "uniform") {
        fail(ErrorKind::usage, "unknown model kind '" + std::string(kind) + "' (expected toy or uniform)");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open model file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    ToyModelSpec spec = parse_toy_spec(buf.str());
    if (kind == "uniform") return make_uniform_model(std::move(spec.vocab));
    return make_toy_model(std::move(spec));
}

}  // namespace dyne
