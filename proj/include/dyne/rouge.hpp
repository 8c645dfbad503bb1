#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dyne::rouge {

enum class MultiRef { max_over_refs, average_over_refs };

/// Preprocessing and aggregation conventions. Defaults are the "default"
/// profile: lowercase, keep punctuation, no stemming, best reference wins.
struct RougeConfig {
    bool lowercase = true;
    bool strip_punctuation = false;
    bool use_porter_stemming = false;
    MultiRef multi_ref = MultiRef::max_over_refs;
    double beta = 1.0;

    void validate() const;
};

/// Named presets; unknown names return nullopt. Known: "default",
/// "normalized" (lowercase, strip punctuation, stemming).
std::optional<RougeConfig> profile(std::string_view name);

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

/// F-measure with recall weighted beta times as much as precision.
double f_measure(double precision, double recall, double beta);

/// Tokens after applying cfg's preprocessing.
std::vector<std::string> tokenize(std::string_view text, const RougeConfig& cfg);

RougeScore rouge_n(std::string_view hypothesis, std::span<const std::string> references, int n,
                   const RougeConfig& cfg);
RougeScore rouge_l(std::string_view hypothesis, std::span<const std::string> references, const RougeConfig& cfg);

/// Metric identifier: order n >= 1 for ROUGE-N, 0 for ROUGE-L.
struct Metric {
    int order = 1;

    static Metric rouge_n(int n) { return Metric{n}; }
    static Metric rouge_l() { return Metric{0}; }
    std::string name() const;
    static std::optional<Metric> parse(std::string_view name);

    friend auto operator<=>(const Metric&, const Metric&) = default;
};

RougeScore score(const Metric& metric, std::string_view hypothesis, std::span<const std::string> references,
                 const RougeConfig& cfg);

struct ScoredPair {
    std::string hypothesis;
    std::vector<std::string> references;
};

/// Unweighted mean over pairs of each score component.
std::map<Metric, RougeScore> evaluate_corpus(std::span<const ScoredPair> pairs, const RougeConfig& cfg,
                                             std::span<const Metric> metrics);

}  // namespace dyne::rouge
