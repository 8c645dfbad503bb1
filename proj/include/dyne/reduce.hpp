#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "dyne/seqmodel.hpp"

namespace dyne {

/// How per-input next-token distributions are combined at each timestep.
enum class ReduceKind {
    mean_logprob,  // arithmetic mean of log-probabilities (geometric mean)
    mean_prob,     // log of the arithmetic mean of probabilities
};

std::string_view to_string(ReduceKind kind) noexcept;
std::optional<ReduceKind> parse_reduce_kind(std::string_view name);

/// Elementwise mean in log space. Not renormalized; -inf propagates.
LogProbVector reduce_mean_logprob(std::span<const LogProbVector> per_input);

/// log(mean(exp(.))) elementwise, max-shifted. Normalized inputs give a
/// normalized output.
LogProbVector reduce_mean_prob(std::span<const LogProbVector> per_input);

LogProbVector reduce(ReduceKind kind, std::span<const LogProbVector> per_input);

/// Scalar version of the per-cell combination, used to validate traces.
double reduce_values(ReduceKind kind, std::span<const double> values);

double logsumexp(std::span<const double> values);

}  // namespace dyne
