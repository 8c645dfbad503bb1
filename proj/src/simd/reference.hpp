#pragma once

#include <cstddef>
#include <span>

namespace dyne::simd::detail {

// Column-at-a-time scalar kernels. Vector variants call these for the tail
// that does not fill a whole register.
double mean_column(std::span<const double* const> rows, std::size_t col, double* scratch);
double log_mean_exp_column(std::span<const double* const> rows, std::size_t col, double* scratch);

}  // namespace dyne::simd::detail
