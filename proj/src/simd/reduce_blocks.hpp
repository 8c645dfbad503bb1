#pragma once

// Column reductions over whole registers, instantiated per lane type. The
// caller handles the tail with the scalar column kernels.

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "exp_poly.hpp"
#include "reference.hpp"

namespace dyne::simd::detail {

// Odd-even transposition sort, ascending per lane.
template <class V>
void sort_lanes(std::vector<V>& s) {
    const std::size_t k = s.size();
    for (std::size_t round = 0; round < k; ++round) {
        for (std::size_t j = round & 1; j + 1 < k; j += 2) {
            const V lo = vmin(s[j], s[j + 1]);
            const V hi = vmax(s[j], s[j + 1]);
            s[j] = lo;
            s[j + 1] = hi;
        }
    }
}

template <class V, class F>
V run_weighted_sum(const std::vector<V>& s, F&& transform) {
    const std::size_t k = s.size();
    const V kd(static_cast<double>(k));
    const V one(1.0);
    const V zero(0.0);
    V acc = zero;
    V run = one;
    for (std::size_t j = 0; j < k; ++j) {
        const auto end = j + 1 == k ? V::all_true() : neq(s[j], s[j + 1]);
        acc = acc + select(end, (run / kd) * transform(s[j]), zero);
        run = select(end, one, run + one);
    }
    return acc;
}

template <class V>
void mean_kernel(std::span<const double* const> rows, std::span<double> out) {
    const std::size_t k = rows.size();
    std::vector<V> s(k);
    std::size_t i = 0;
    for (; i + V::lanes <= out.size(); i += V::lanes) {
        for (std::size_t j = 0; j < k; ++j) s[j] = V::load(rows[j] + i);
        sort_lanes(s);
        V::store(out.data() + i, run_weighted_sum(s, [](V v) { return v; }));
    }
    std::vector<double> scratch(k);
    for (; i < out.size(); ++i) out[i] = mean_column(rows, i, scratch.data());
}

template <class V>
void log_mean_exp_kernel(std::span<const double* const> rows, std::span<double> out) {
    const std::size_t k = rows.size();
    const V neg_inf(-std::numeric_limits<double>::infinity());
    const V zero(0.0);
    std::vector<V> s(k);
    alignas(64) double shift_lanes[V::lanes];
    std::size_t i = 0;
    for (; i + V::lanes <= out.size(); i += V::lanes) {
        for (std::size_t j = 0; j < k; ++j) s[j] = V::load(rows[j] + i);
        sort_lanes(s);
        const V m = s[k - 1];
        const V shift = select(eq(m, neg_inf), zero, m);
        const V mean = run_weighted_sum(s, [shift](V v) { return exp_nonpositive(v - shift); });
        V::store(out.data() + i, mean);
        V::store(shift_lanes, shift);
        for (std::size_t l = 0; l < V::lanes; ++l) out[i + l] = shift_lanes[l] + std::log(out[i + l]);
    }
    std::vector<double> scratch(k);
    for (; i < out.size(); ++i) out[i] = log_mean_exp_column(rows, i, scratch.data());
}

template <class V>
double logsumexp_kernel(std::span<const double> values) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const std::size_t n = values.size();
    std::size_t i = 0;
    V mv(kNegInf);
    for (; i + V::lanes <= n; i += V::lanes) mv = vmax(mv, V::load(values.data() + i));
    alignas(64) double lanes[V::lanes];
    V::store(lanes, mv);
    double m = kNegInf;
    for (double x : lanes) m = vmax(m, x);
    for (; i < n; ++i) m = vmax(m, values[i]);
    if (m == kNegInf) return kNegInf;

    const V mvec(m);
    V acc(0.0);
    i = 0;
    for (; i + V::lanes <= n; i += V::lanes) acc = acc + exp_nonpositive(V::load(values.data() + i) - mvec);
    V::store(lanes, acc);
    double sum = 0.0;
    for (double x : lanes) sum += x;
    for (; i < n; ++i) sum += exp_nonpositive(values[i] - m);
    return m + std::log(sum);
}

}  // namespace dyne::simd::detail
