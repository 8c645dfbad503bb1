#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dyne/reduce.hpp"
#include "dyne/vocab.hpp"

namespace dyne {

/// One decoded timestep: the chosen token, its combined ensemble
/// log-score, and the log-score each input assigned to it under the shared
/// prefix.
struct TraceRow {
    TokenId token = kEos;
    std::string text;
    double combined = 0.0;
    std::vector<double> per_input;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

/// Timesteps x inputs matrix of per-input log-scores for one output
/// sequence. Cells are log-probabilities, not probabilities.
struct TraceMatrix {
    std::vector<std::string> input_labels;
    std::vector<TraceRow> rows;

    std::size_t width() const noexcept { return input_labels.size(); }
    friend bool operator==(const TraceMatrix&, const TraceMatrix&) = default;
};

enum class TraceFormat { csv, json };

/// Appends a row. Throws shape error (leaving the trace unchanged) when
/// per_input does not match the number of labels.
void record_step(TraceMatrix& trace, TokenId token, std::string text, double combined,
                 std::vector<double> per_input);

/// Column sums: log-likelihood of the whole sequence under each input.
std::vector<double> input_totals(const TraceMatrix& trace);

/// Sum of the combined column.
double combined_total(const TraceMatrix& trace);

/// Largest |combined - reduce(per_input)| over all rows.
double max_reduce_residual(const TraceMatrix& trace, ReduceKind kind);

/// CSV: header `timestep,token,combined,<label_1>,...`, values written
/// with 17 significant digits, -inf as `-inf`. Fields containing a comma or
/// quote are quoted.
///
/// JSON: {"input_labels": [...], "rows": [{"timestep", "token_id", "token",
/// "combined", "per_input": [...]}]}; non-finite numbers are the strings
/// "-inf" / "inf".
std::string export_trace(const TraceMatrix& trace, TraceFormat format);

/// CSV carries token strings only; ids are looked up in `vocab`.
TraceMatrix parse_trace_csv(std::string_view text, const Vocab& vocab);
TraceMatrix parse_trace_json(std::string_view text);

}  // namespace dyne
