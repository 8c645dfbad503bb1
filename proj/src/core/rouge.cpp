#include "dyne/rouge.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "dyne/error.hpp"
#include "dyne/porter.hpp"
#include "dyne/text_util.hpp"

namespace dyne::rouge {

namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n, std::size_t& total) {
    NgramCounts counts;
    total = 0;
    const auto order = static_cast<std::size_t>(n);
    if (tokens.size() < order) return counts;
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (std::size_t j = 1; j < order; ++j) {
            key += '\x1f';
            key += tokens[i + j];
        }
        ++counts[key];
        ++total;
    }
    return counts;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

RougeScore from_counts(std::size_t overlap, std::size_t hyp_total, std::size_t ref_total, double beta) {
    RougeScore s;
    s.precision = hyp_total ? static_cast<double>(overlap) / static_cast<double>(hyp_total) : 0.0;
    s.recall = ref_total ? static_cast<double>(overlap) / static_cast<double>(ref_total) : 0.0;
    s.f = f_measure(s.precision, s.recall, beta);
    return s;
}

std::vector<std::vector<std::string>> tokenize_references(std::span<const std::string> references,
                                                          const RougeConfig& cfg) {
    if (references.empty()) fail(ErrorKind::usage, "ROUGE needs at least one reference");
    std::vector<std::vector<std::string>> out;
    out.reserve(references.size());
    for (std::size_t i = 0; i < references.size(); ++i) {
        out.push_back(tokenize(references[i], cfg));
        if (out.back().empty()) fail(ErrorKind::input, "reference " + std::to_string(i) + " is empty");
    }
    return out;
}

template <class F>
RougeScore combine(const std::vector<std::vector<std::string>>& refs, const RougeConfig& cfg, F&& per_ref) {
    if (cfg.multi_ref == MultiRef::max_over_refs) {
        RougeScore best = per_ref(refs.front());
        for (std::size_t i = 1; i < refs.size(); ++i) {
            RougeScore s = per_ref(refs[i]);
            if (s.f > best.f) best = s;
        }
        return best;
    }
    RougeScore mean;
    for (const auto& r : refs) {
        const RougeScore s = per_ref(r);
        mean.precision += s.precision;
        mean.recall += s.recall;
        mean.f += s.f;
    }
    const double n = static_cast<double>(refs.size());
    mean.precision /= n;
    mean.recall /= n;
    mean.f /= n;
    return mean;
}

}  // namespace

void RougeConfig::validate() const {
    if (!(beta > 0.0)) fail(ErrorKind::usage, "ROUGE beta must be positive");
}

std::optional<RougeConfig> profile(std::string_view name) {
    if (name == "default") return RougeConfig{};
    if (name == "normalized") return RougeConfig{true, true, true, MultiRef::max_over_refs, 1.0};
    return std::nullopt;
}

double f_measure(double precision, double recall, double beta) {
    if (precision + recall <= 0.0) return 0.0;
    const double b2 = beta * beta;
    const double denom = recall + b2 * precision;
    return denom > 0.0 ? (1.0 + b2) * precision * recall / denom : 0.0;
}

std::vector<std::string> tokenize(std::string_view text, const RougeConfig& cfg) {
    std::string buf(text);
    for (char& c : buf) {
        const auto u = static_cast<unsigned char>(c);
        if (cfg.lowercase) c = static_cast<char>(std::tolower(u));
        if (cfg.strip_punctuation && !std::isalnum(u) && !std::isspace(u)) c = ' ';
    }
    std::vector<std::string> out;
    for (auto piece : split_whitespace(buf)) {
        out.push_back(cfg.use_porter_stemming ? porter_stem(piece) : std::string(piece));
    }
    return out;
}

RougeScore rouge_n(std::string_view hypothesis, std::span<const std::string> references, int n,
                   const RougeConfig& cfg) {
    cfg.validate();
    if (n < 1) fail(ErrorKind::usage, "ROUGE-N order must be >= 1");
    const auto refs = tokenize_references(references, cfg);
    std::size_t hyp_total = 0;
    const auto hyp = count_ngrams(tokenize(hypothesis, cfg), n, hyp_total);
    return combine(refs, cfg, [&](const std::vector<std::string>& ref_tokens) {
        std::size_t ref_total = 0;
        const auto ref = count_ngrams(ref_tokens, n, ref_total);
        std::size_t overlap = 0;
        for (const auto& [gram, count] : hyp) {
            if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
        }
        return from_counts(overlap, hyp_total, ref_total, cfg.beta);
    });
}

RougeScore rouge_l(std::string_view hypothesis, std::span<const std::string> references, const RougeConfig& cfg) {
    cfg.validate();
    const auto refs = tokenize_references(references, cfg);
    const auto hyp = tokenize(hypothesis, cfg);
    return combine(refs, cfg, [&](const std::vector<std::string>& ref_tokens) {
        return from_counts(lcs_length(hyp, ref_tokens), hyp.size(), ref_tokens.size(), cfg.beta);
    });
}

std::string Metric::name() const {
    return order == 0 ? "rouge-l" : "rouge-" + std::to_string(order);
}

std::optional<Metric> Metric::parse(std::string_view name) {
    if (name == "rouge-l" || name == "rouge-L") return rouge_l();
    if (name.starts_with("rouge-")) {
        auto n = parse_u64(name.substr(6));
        if (n && *n >= 1 && *n <= 9) return Metric::rouge_n(static_cast<int>(*n));
    }
    return std::nullopt;
}

RougeScore score(const Metric& metric, std::string_view hypothesis, std::span<const std::string> references,
                 const RougeConfig& cfg) {
    return metric.order == 0 ? rouge_l(hypothesis, references, cfg)
                             : rouge_n(hypothesis, references, metric.order, cfg);
}

std::map<Metric, RougeScore> evaluate_corpus(std::span<const ScoredPair> pairs, const RougeConfig& cfg,
                                             std::span<const Metric> metrics) {
    if (pairs.empty()) fail(ErrorKind::usage, "evaluate_corpus needs at least one pair");
    if (metrics.empty()) fail(ErrorKind::usage, "evaluate_corpus needs at least one metric");
    std::map<Metric, RougeScore> out;
    for (const auto& m : metrics) {
        RougeScore sum;
        for (const auto& p : pairs) {
            const RougeScore s = score(m, p.hypothesis, p.references, cfg);
            sum.precision += s.precision;
            sum.recall += s.recall;
            sum.f += s.f;
        }
        const double n = static_cast<double>(pairs.size());
        out[m] = RougeScore{sum.precision / n, sum.recall / n, sum.f / n};
    }
    return out;
}

}  // namespace dyne::rouge
