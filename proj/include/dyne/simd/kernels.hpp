#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace dyne::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// Elementwise reductions across k equally long rows.
///
/// Every variant combines the k values of one column in a canonical form:
/// values are sorted, equal values are merged into runs, and each run adds
/// (run_length / k) * value in ascending order. The result is therefore
/// bitwise independent of row order and of uniformly replicating the rows,
/// and all variants are bit-identical to the scalar reference.
struct KernelSet {
    Isa isa;
    /// out[i] = mean_j rows[j][i]
    void (*mean)(std::span<const double* const> rows, std::span<double> out);
    /// out[i] = log(mean_j exp(rows[j][i])), shifted by the column maximum.
    void (*log_mean_exp)(std::span<const double* const> rows, std::span<double> out);
    /// log(sum_i exp(values[i])); -inf for an empty or all -inf input.
    /// Summation order differs between variants (agreement to a few ulp only).
    double (*logsumexp)(std::span<const double> values);
};

const KernelSet& scalar_kernels() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelSet* kernels_for(Isa isa) noexcept;

/// Best variant for this CPU, chosen once. The environment variable
/// DYNE_SIMD=scalar|avx2|neon forces a variant when it is available.
const KernelSet& active_kernels() noexcept;

}  // namespace dyne::simd
