#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "solsurf/error.hpp"
#include "solsurf/mcore.hpp"

namespace solsurf {

inline double quad_norm(double v) { return std::abs(v); }
inline double quad_norm(const cplx& v) { return std::abs(v); }
inline double quad_norm(const Mat2C& v) { return v.max_norm(); }
template <std::size_t N>
double quad_norm(const std::array<cplx, N>& v)
{
    double m = 0;
    for (const auto& x : v)
        m = std::max(m, std::abs(x));
    return m;
}

template <std::size_t N>
std::array<cplx, N> operator*(double s, std::array<cplx, N> v)
{
    for (auto& x : v)
        x *= s;
    return v;
}

template <std::size_t N>
std::array<cplx, N> operator+(std::array<cplx, N> a, const std::array<cplx, N>& b)
{
    for (std::size_t i = 0; i < N; ++i)
        a[i] += b[i];
    return a;
}

template <std::size_t N>
std::array<cplx, N> operator-(std::array<cplx, N> a, const std::array<cplx, N>& b)
{
    for (std::size_t i = 0; i < N; ++i)
        a[i] -= b[i];
    return a;
}

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK abscissae and weights).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V, class F>
std::pair<V, double> gk15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    const V fc = f(c);
    V kron = kWgk[7] * fc;
    V gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = r * kXgk[j];
        const V f1 = f(c - dx), f2 = f(c + dx);
        kron = kron + kWgk[j] * (f1 + f2);
        if (j % 2 == 1)
            gauss = gauss + kWg[j / 2] * (f1 + f2);
    }
    kron = r * kron;
    gauss = r * gauss;
    return {kron, quad_norm(kron - gauss)};
}

template <class V, class F>
V gk_adaptive(F& f, double a, double b, double abs_tol, int depth, const V& whole, double whole_err)
{
    if (whole_err <= abs_tol)
        return whole;
    if (depth <= 0)
        throw Error(ErrorKind::QuadratureFailure,
                    "adaptive quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    const double m = 0.5 * (a + b);
    auto [left, lerr] = gk15<V>(f, a, m);
    auto [right, rerr] = gk15<V>(f, m, b);
    if (lerr + rerr <= abs_tol)
        return left + right;
    return gk_adaptive<V>(f, a, m, 0.5 * abs_tol, depth - 1, left, lerr) +
           gk_adaptive<V>(f, m, b, 0.5 * abs_tol, depth - 1, right, rerr);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// Converges when the local error estimate falls below max(tol, tol*|I|).
template <class V, class F>
V integrate_gk(F f, double a, double b, double tol, int max_depth = 40)
{
    auto [whole, err] = detail::gk15<V>(f, a, b);
    const double target = tol * std::max(1.0, quad_norm(whole));
    return detail::gk_adaptive<V>(f, a, b, target, max_depth, whole, err);
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

}  // namespace solsurf
