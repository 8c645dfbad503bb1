#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dyne/simd/kernels.hpp"
#include "exp_poly.hpp"

namespace dyne::simd::detail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sorted copy of column `col`, ascending.
void gather_sorted(std::span<const double* const> rows, std::size_t col, double* scratch) {
    for (std::size_t j = 0; j < rows.size(); ++j) scratch[j] = rows[j][col];
    std::sort(scratch, scratch + rows.size());
}

template <class F>
double run_weighted_sum(const double* sorted, std::size_t k, F&& transform) {
    const double kd = static_cast<double>(k);
    double acc = 0.0;
    double run = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (j + 1 < k && sorted[j] == sorted[j + 1]) {
            run += 1.0;
            continue;
        }
        acc = acc + (run / kd) * transform(sorted[j]);
        run = 1.0;
    }
    return acc;
}

void mean_ref(std::span<const double* const> rows, std::span<double> out) {
    std::vector<double> scratch(rows.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mean_column(rows, i, scratch.data());
}

void log_mean_exp_ref(std::span<const double* const> rows, std::span<double> out) {
    std::vector<double> scratch(rows.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = log_mean_exp_column(rows, i, scratch.data());
}

double logsumexp_ref(std::span<const double> values) {
    double m = kNegInf;
    for (double v : values) m = vmax(m, v);
    if (m == kNegInf) return kNegInf;
    double sum = 0.0;
    for (double v : values) sum = sum + exp_nonpositive(v - m);
    return m + std::log(sum);
}

}  // namespace

double mean_column(std::span<const double* const> rows, std::size_t col, double* scratch) {
    gather_sorted(rows, col, scratch);
    return run_weighted_sum(scratch, rows.size(), [](double v) { return v; });
}

double log_mean_exp_column(std::span<const double* const> rows, std::size_t col, double* scratch) {
    gather_sorted(rows, col, scratch);
    const std::size_t k = rows.size();
    const double m = scratch[k - 1];
    const double shift = m == kNegInf ? 0.0 : m;
    const double mean = run_weighted_sum(scratch, k, [shift](double v) { return exp_nonpositive(v - shift); });
    return shift + std::log(mean);
}

}  // namespace dyne::simd::detail

namespace dyne::simd {

const KernelSet& scalar_kernels() noexcept {
    static const KernelSet set{Isa::scalar, &detail::mean_ref, &detail::log_mean_exp_ref, &detail::logsumexp_ref};
    return set;
}

}  // namespace dyne::simd
