#pragma once

#include <immintrin.h>

#include <cstddef>

namespace dyne::simd::detail {

struct MaskF64x4 {
    __m256d m;
};

struct alignas(32) F64x4 {
    static constexpr std::size_t lanes = 4;
    __m256d v;

    F64x4() = default;
    F64x4(__m256d x) : v(x) {}
    explicit F64x4(double x) : v(_mm256_set1_pd(x)) {}

    static F64x4 load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, F64x4 x) { _mm256_storeu_pd(p, x.v); }
    static MaskF64x4 all_true() { return {_mm256_castsi256_pd(_mm256_set1_epi64x(-1))}; }
};

inline F64x4 operator+(F64x4 a, F64x4 b) { return _mm256_add_pd(a.v, b.v); }
inline F64x4 operator-(F64x4 a, F64x4 b) { return _mm256_sub_pd(a.v, b.v); }
inline F64x4 operator*(F64x4 a, F64x4 b) { return _mm256_mul_pd(a.v, b.v); }
inline F64x4 operator/(F64x4 a, F64x4 b) { return _mm256_div_pd(a.v, b.v); }

// maxpd/minpd return the second operand unless the first compares greater
// (resp. less), the same rule as the scalar vmax/vmin.
inline F64x4 vmax(F64x4 a, F64x4 b) { return _mm256_max_pd(a.v, b.v); }
inline F64x4 vmin(F64x4 a, F64x4 b) { return _mm256_min_pd(a.v, b.v); }
inline F64x4 vfloor(F64x4 a) { return _mm256_floor_pd(a.v); }

inline MaskF64x4 lt(F64x4 a, F64x4 b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)}; }
inline MaskF64x4 eq(F64x4 a, F64x4 b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_EQ_OQ)}; }
inline MaskF64x4 neq(F64x4 a, F64x4 b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_NEQ_OQ)}; }
inline F64x4 select(MaskF64x4 m, F64x4 a, F64x4 b) { return _mm256_blendv_pd(b.v, a.v, m.m); }

inline F64x4 two_pow(F64x4 n) {
    const __m128i n32 = _mm256_cvttpd_epi32(n.v);
    __m256i bits = _mm256_cvtepi32_epi64(n32);
    bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
    bits = _mm256_slli_epi64(bits, 52);
    return _mm256_castsi256_pd(bits);
}

}  // namespace dyne::simd::detail
