#include "dyne/reduce.hpp"

#include <vector>

#include "dyne/error.hpp"
#include "dyne/simd/kernels.hpp"

namespace dyne {

namespace {

std::vector<const double*> row_pointers(std::span<const LogProbVector> per_input) {
    if (per_input.empty()) fail(ErrorKind::usage, "reduce needs at least one distribution");
    const std::size_t n = per_input.front().size();
    std::vector<const double*> rows;
    rows.reserve(per_input.size());
    for (std::size_t i = 0; i < per_input.size(); ++i) {
        if (per_input[i].size() != n) {
            fail(ErrorKind::shape, "distribution " + std::to_string(i) + " has length " +
                                       std::to_string(per_input[i].size()) + ", expected " + std::to_string(n));
        }
        rows.push_back(per_input[i].data());
    }
    return rows;
}

}  // namespace

std::string_view to_string(ReduceKind kind) noexcept {
    return kind == ReduceKind::mean_logprob ? "mean-logprob" : "mean-prob";
}

std::optional<ReduceKind> parse_reduce_kind(std::string_view name) {
    if (name == "mean-logprob") return ReduceKind::mean_logprob;
    if (name == "mean-prob") return ReduceKind::mean_prob;
    return std::nullopt;
}

LogProbVector reduce_mean_logprob(std::span<const LogProbVector> per_input) {
    const auto rows = row_pointers(per_input);
    LogProbVector out(per_input.front().size());
    simd::active_kernels().mean(rows, out);
    return out;
}

LogProbVector reduce_mean_prob(std::span<const LogProbVector> per_input) {
    const auto rows = row_pointers(per_input);
    LogProbVector out(per_input.front().size());
    simd::active_kernels().log_mean_exp(rows, out);
    return out;
}

LogProbVector reduce(ReduceKind kind, std::span<const LogProbVector> per_input) {
    return kind == ReduceKind::mean_logprob ? reduce_mean_logprob(per_input) : reduce_mean_prob(per_input);
}

double reduce_values(ReduceKind kind, std::span<const double> values) {
    if (values.empty()) fail(ErrorKind::usage, "reduce needs at least one value");
    std::vector<const double*> rows;
    rows.reserve(values.size());
    for (const double& v : values) rows.push_back(&v);
    double out = 0.0;
    const auto& k = simd::scalar_kernels();
    (kind == ReduceKind::mean_logprob ? k.mean : k.log_mean_exp)(rows, std::span<double>(&out, 1));
    return out;
}

double logsumexp(std::span<const double> values) {
    return simd::active_kernels().logsumexp(values);
}

}  // namespace dyne
