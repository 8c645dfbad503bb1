#pragma once

#include <arm_neon.h>

#include <cstddef>

namespace dyne::simd::detail {

struct MaskF64x2 {
    uint64x2_t m;
};

struct F64x2 {
    static constexpr std::size_t lanes = 2;
    float64x2_t v;

    F64x2() = default;
    F64x2(float64x2_t x) : v(x) {}
    explicit F64x2(double x) : v(vdupq_n_f64(x)) {}

    static F64x2 load(const double* p) { return vld1q_f64(p); }
    static void store(double* p, F64x2 x) { vst1q_f64(p, x.v); }
    static MaskF64x2 all_true() { return {vdupq_n_u64(~0ULL)}; }
};

inline F64x2 operator+(F64x2 a, F64x2 b) { return vaddq_f64(a.v, b.v); }
inline F64x2 operator-(F64x2 a, F64x2 b) { return vsubq_f64(a.v, b.v); }
inline F64x2 operator*(F64x2 a, F64x2 b) { return vmulq_f64(a.v, b.v); }
inline F64x2 operator/(F64x2 a, F64x2 b) { return vdivq_f64(a.v, b.v); }

inline MaskF64x2 lt(F64x2 a, F64x2 b) { return {vcltq_f64(a.v, b.v)}; }
inline MaskF64x2 eq(F64x2 a, F64x2 b) { return {vceqq_f64(a.v, b.v)}; }
inline MaskF64x2 neq(F64x2 a, F64x2 b) { return {vreinterpretq_u64_u8(vmvnq_u8(vreinterpretq_u8_u64(vceqq_f64(a.v, b.v))))}; }
inline F64x2 select(MaskF64x2 m, F64x2 a, F64x2 b) { return vbslq_f64(m.m, a.v, b.v); }

// vmaxq/vminq treat signed zeros differently from the scalar rule, so use
// compare + select instead.
inline F64x2 vmax(F64x2 a, F64x2 b) { return vbslq_f64(vcgtq_f64(a.v, b.v), a.v, b.v); }
inline F64x2 vmin(F64x2 a, F64x2 b) { return vbslq_f64(vcltq_f64(a.v, b.v), a.v, b.v); }
inline F64x2 vfloor(F64x2 a) { return vrndmq_f64(a.v); }

inline F64x2 two_pow(F64x2 n) {
    int64x2_t bits = vcvtq_s64_f64(n.v);
    bits = vaddq_s64(bits, vdupq_n_s64(1023));
    bits = vshlq_n_s64(bits, 52);
    return vreinterpretq_f64_s64(bits);
}

}  // namespace dyne::simd::detail
