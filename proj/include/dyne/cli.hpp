#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dyne/decoder.hpp"
#include "dyne/provenance.hpp"
#include "dyne/rouge.hpp"

namespace dyne::cli {

struct RunConfig {
    std::filesystem::path model_path;
    std::string model_kind = "toy";
    std::filesystem::path clusters_path;
    DecodeParams decode;
    std::size_t max_docs = 5;
    std::size_t max_tokens = 512;
    std::filesystem::path out_dir;
    TraceFormat trace_format = TraceFormat::csv;
    std::size_t jobs = 1;
    rouge::RougeConfig rouge;

    /// TOML accepted back through --config. Output paths are left out so that
    /// reruns into different directories produce identical files.
    std::string to_toml() const;
};

struct ClusterMetrics {
    std::string id;
    std::map<rouge::Metric, rouge::RougeScore> scores;
};

struct EvaluationReport {
    std::map<rouge::Metric, rouge::RougeScore> mean;
    std::vector<ClusterMetrics> clusters;

    std::string to_json() const;
    std::string to_text() const;
};

/// Decodes every cluster into cfg.out_dir: summaries.jsonl, one trace per
/// cluster under traces/, and run_config.toml. Per-cluster failures are
/// reported on `err` and skipped. Returns the number of failed clusters.
std::size_t cmd_decode(const RunConfig& cfg, std::ostream& err);

/// Scores a summaries file against cluster references.
EvaluationReport cmd_evaluate(const std::filesystem::path& hypotheses, const std::filesystem::path& clusters,
                              const rouge::RougeConfig& cfg);

struct SweepRow {
    std::size_t docs = 0;
    EvaluationReport report;
    std::size_t failures = 0;
};

/// One decode + evaluate per ensemble size, outputs under out_dir/docs_<n>/,
/// table in out_dir/sweep.tsv.
std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, const std::vector<std::size_t>& sizes, std::ostream& err);

/// Entry point of the `dyne` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dyne::cli
