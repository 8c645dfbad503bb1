// Compiled with -mavx2 only; never called unless the CPU reports AVX2.
#include "dyne/simd/kernels.hpp"
#include "reduce_blocks.hpp"
#include "vec_avx2.hpp"

namespace dyne::simd::detail {

const KernelSet& avx2_kernel_set() noexcept {
    static const KernelSet set{Isa::avx2, &mean_kernel<F64x4>, &log_mean_exp_kernel<F64x4>,
                               &logsumexp_kernel<F64x4>};
    return set;
}

}  // namespace dyne::simd::detail
