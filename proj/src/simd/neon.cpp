#include "dyne/simd/kernels.hpp"
#include "reduce_blocks.hpp"
#include "vec_neon.hpp"

namespace dyne::simd::detail {

const KernelSet& neon_kernel_set() noexcept {
    static const KernelSet set{Isa::neon, &mean_kernel<F64x2>, &log_mean_exp_kernel<F64x2>,
                               &logsumexp_kernel<F64x2>};
    return set;
}

}  // namespace dyne::simd::detail
