// Compensated floating-point helpers shared by the orbit generators and
// the averaging kernels.  Everything here is pure and allocation-free.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace cubeavg {

using cplx = std::complex<double>;

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.  Enough precision to keep
// phases like n*(n-1)/2 * alpha accurate after reduction mod 1, where a plain
// double would lose ~ulp(n^2) absolutely.
struct Dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline Dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// requires |a| >= |b| or a == 0
inline Dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline Dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Dd dd_add(Dd a, double b) {
    Dd s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}

inline Dd dd_add(Dd a, Dd b) {
    Dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline Dd dd_mul(Dd a, double b) {
    Dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline Dd dd_mul(Dd a, Dd b) {
    Dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline Dd dd_neg(Dd a) { return {-a.hi, -a.lo}; }

// Largest integer <= hi + lo, returned as an exact double.
inline double dd_floor(Dd a) {
    double f = std::floor(a.hi);
    if (a.hi == f && a.lo < 0.0) f -= 1.0;
    return f;
}

// Fractional part of x in [0,1).  A value that rounds to exactly 1.0 is
// mapped to 0.0 (it sits on the wrap point of the circle).
inline double frac1(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y -= 1.0;
    if (y < 0.0) y += 1.0;
    return y;
}

inline double dd_frac(Dd a) {
    Dd r = dd_add(a, -dd_floor(a));
    double x = r.hi + r.lo;
    if (x >= 1.0) x -= 1.0;
    if (x < 0.0) x += 1.0;
    return x;
}

// e(t) = exp(2*pi*i*t).  Reduces t to [-1/2, 1/2] first so the sin/cos
// arguments stay small.
inline cplx cis(double t) {
    double r = t - std::round(t);
    double a = 2.0 * std::numbers::pi * r;
    return {std::cos(a), std::sin(a)};
}

inline cplx cis(Dd t) {
    double k = std::round(t.hi);
    double r = (t.hi - k) + t.lo;  // t.hi - k is exact for |t.hi| < 2^52
    double a = 2.0 * std::numbers::pi * r;
    return {std::cos(a), std::sin(a)};
}

// sin(pi*x) with argument reduction that stays exact for |x| < 2^52.
inline double sinpi(double x) {
    double k = std::round(x);
    double s = std::sin(std::numbers::pi * (x - k));
    return (std::fmod(std::abs(k), 2.0) == 1.0) ? -s : s;
}

inline double sinpi(Dd x) {
    double k = std::round(x.hi);
    double r = (x.hi - k) + x.lo;
    double s = std::sin(std::numbers::pi * r);
    return (std::fmod(std::abs(k), 2.0) == 1.0) ? -s : s;
}

// Distance from t to the nearest integer.
inline double dist_to_int(double t) { return std::abs(t - std::round(t)); }

namespace detail {
template <typename T>
T pairwise_sum_impl(const T* data, std::size_t n) {
    if (n <= 16) {
        T acc{};
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    std::size_t half = n / 2;
    return pairwise_sum_impl(data, half) + pairwise_sum_impl(data + half, n - half);
}
}  // namespace detail

// Pairwise (tree) summation: error growth O(log n) ulp instead of O(n).
template <typename T>
T pairwise_sum(std::span<const T> data) {
    return detail::pairwise_sum_impl(data.data(), data.size());
}

template <typename T>
T pairwise_sum(const std::vector<T>& data) {
    return detail::pairwise_sum_impl(data.data(), data.size());
}

}  // namespace cubeavg
