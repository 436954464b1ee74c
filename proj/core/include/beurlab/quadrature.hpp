#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "beurlab/common.hpp"

namespace beurlab {

namespace detail {

template <typename T>
double qnorm(const T& v) {
    return std::abs(v);
}

template <typename F, typename T>
T adaptive_simpson_rec(const F& f, double a, double b, T fa, T fm, T fb, T whole, double tol,
                       int depth) {
    double m = 0.5 * (a + b);
    T flm = f(0.5 * (a + m));
    T frm = f(0.5 * (m + b));
    T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    T delta = left + right - whole;
    if (depth >= 44 || qnorm(delta) < 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive Simpson to absolute tolerance `tol`; works for double and complex.
template <typename F>
auto adaptive_quad(const F& f, double a, double b, double tol) -> decltype(f(a)) {
    using T = decltype(f(a));
    if (!(b > a)) return T{};
    T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

/// Adaptive quadrature on [a,b] after the substitution x = a + (b-a) s^2 (3-2s),
/// which flattens sqrt-type endpoint kinks (circle-boundary tangencies).
template <typename F>
auto adaptive_quad_smoothed(const F& f, double a, double b, double tol) -> decltype(f(a)) {
    using T = decltype(f(a));
    if (!(b > a)) return T{};
    double len = b - a;
    auto g = [&](double s) -> T {
        double w = s * s * (3.0 - 2.0 * s);
        double dw = 6.0 * s * (1.0 - s);
        double x = a + len * w;
        if (x <= a || x >= b || dw == 0.0) return T{};
        return f(x) * (len * dw);
    };
    return adaptive_quad(g, 0.0, 1.0, tol);
}

/// Gauss-Legendre nodes/weights on [-1,1].
template <int N>
struct GaussLegendre;

template <>
struct GaussLegendre<3> {
    static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
};

template <>
struct GaussLegendre<5> {
    static constexpr std::array<double, 5> nodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                                 0.5384693101056831, 0.9061798459386640};
    static constexpr std::array<double, 5> weights{0.2369268850561891, 0.4786286704993665,
                                                   0.5688888888888889, 0.4786286704993665,
                                                   0.2369268850561891};
};

template <>
struct GaussLegendre<8> {
    static constexpr std::array<double, 8> nodes{
        -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
        0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    static constexpr std::array<double, 8> weights{
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
        0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
};

template <>
struct GaussLegendre<16> {
    static constexpr std::array<double, 16> nodes{
        -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
        -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
        0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
        0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
    static constexpr std::array<double, 16> weights{
        0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
        0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
};

/// Integrates a complex line integral of `f` along the straight segment [a,b].
template <int N, typename F>
cplx segment_integral(const F& f, cplx a, cplx b) {
    cplx mid = 0.5 * (a + b);
    cplx half = 0.5 * (b - a);
    cplx acc{};
    for (int i = 0; i < N; ++i)
        acc += GaussLegendre<N>::weights[i] * f(mid + GaussLegendre<N>::nodes[i] * half);
    return acc * half;
}

}  // namespace beurlab
