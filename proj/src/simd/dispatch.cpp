#include <cstdlib>
#include <string_view>

#include "dyne/simd/kernels.hpp"

namespace dyne::simd {

namespace detail {
#if defined(DYNE_HAVE_AVX2)
const KernelSet& avx2_kernel_set() noexcept;
#endif
#if defined(DYNE_HAVE_NEON)
const KernelSet& neon_kernel_set() noexcept;
#endif
}  // namespace detail

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelSet* kernels_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return &scalar_kernels();
        case Isa::avx2:
#if defined(DYNE_HAVE_AVX2)
            if (__builtin_cpu_supports("avx2")) return &detail::avx2_kernel_set();
#endif
            return nullptr;
        case Isa::neon:
#if defined(DYNE_HAVE_NEON)
            return &detail::neon_kernel_set();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

namespace {

const KernelSet& select_kernels() noexcept {
    if (const char* forced = std::getenv("DYNE_SIMD")) {
        const std::string_view name(forced);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (name == to_string(isa)) {
                if (const KernelSet* set = kernels_for(isa)) return *set;
            }
        }
    }
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (const KernelSet* set = kernels_for(isa)) return *set;
    }
    return scalar_kernels();
}

}  // namespace

const KernelSet& active_kernels() noexcept {
    static const KernelSet& set = select_kernels();
    return set;
}

}  // namespace dyne::simd
