#pragma once

// exp(x) for x <= 0, written once over a lane type so that the scalar
// reference and every vector variant execute the same IEEE operations.
// Contraction into FMA must stay disabled for these translation units.

#include <bit>
#include <cmath>
#include <cstdint>

namespace dyne::simd::detail {

inline double vmax(double a, double b) { return a > b ? a : b; }
inline double vmin(double a, double b) { return a < b ? a : b; }
inline double vfloor(double a) { return std::floor(a); }
inline bool lt(double a, double b) { return a < b; }
inline double select(bool m, double a, double b) { return m ? a : b; }

// 2^n for integral n in [-1022, 1023].
inline double two_pow(double n) {
    const auto bits = static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + 1023) << 52;
    return std::bit_cast<double>(bits);
}

inline constexpr double kLog2e = 1.44269504088896338700e+00;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;  // 32 significant bits
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpUnderflow = -708.0;

// Taylor coefficients 1/i!, i = 13 .. 0. |r| <= ln2/2 keeps the truncation
// error below 1e-17 relative.
inline constexpr double kExpCoeffs[] = {
    1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
    1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
    1.0 / 6.0,          0.5,               1.0,              1.0,
};

/// exp(x) for x in [-inf, 0]; returns exactly 1 for x == 0 and 0 below the
/// normal range.
template <class V>
inline V exp_nonpositive(V x) {
    const V xc = vmax(x, V(kExpUnderflow));
    const V n = vfloor(xc * V(kLog2e) + V(0.5));
    const V r = (xc - n * V(kLn2Hi)) - n * V(kLn2Lo);
    V p(kExpCoeffs[0]);
    for (std::size_t i = 1; i < std::size(kExpCoeffs); ++i) p = p * r + V(kExpCoeffs[i]);
    return select(lt(x, V(kExpUnderflow)), V(0.0), p * two_pow(n));
}

}  // namespace dyne::simd::detail
