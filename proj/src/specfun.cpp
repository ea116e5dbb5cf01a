#include "solsurf/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "solsurf/error.hpp"

namespace solsurf {

namespace {

const double kTwoOverSqrtPi = 2.0 / std::sqrt(std::numbers::pi);

// sum_k (-1)^k z^{2k+1} / (k! (2k+1)); no cancellation when |Im z| >= |Re z|.
SeriesResult erf_maclaurin(cplx z, double tol)
{
    const cplx z2 = z * z;
    cplx power = z;  // (-1)^k z^{2k+1} / k!
    cplx sum = z;
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        power *= -z2 / static_cast<double>(k + 1);
        const cplx term = power / static_cast<double>(2 * k + 3);
        sum += term;
        const double ratio = std::abs(z2) / (k + 2);
        if (ratio < 1.0) {
            const double tail = std::abs(term) * ratio / (1.0 - ratio);
            if (tail <= tol * std::max(1.0, std::abs(sum)))
                return {kTwoOverSqrtPi * sum, k + 2, kTwoOverSqrtPi * tail};
        }
    }
    throw Error(ErrorKind::NoConvergence, "erf Maclaurin series");
}

// exp(-z^2) sum_k 2^k z^{2k+1} / (1*3*...*(2k+1)); positive terms for real z.
SeriesResult erf_scaled_series(cplx z, double tol)
{
    const cplx z2 = z * z;
    cplx term = z;
    cplx sum = z;
    const cplx scale = std::exp(-z2);
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= 2.0 * z2 / static_cast<double>(2 * k + 1);
        sum += term;
        const double ratio = 2.0 * std::abs(z2) / (2 * k + 3);
        if (ratio < 1.0) {
            const double tail = std::abs(term) * ratio / (1.0 - ratio) * std::abs(scale);
            const cplx value = scale * sum;
            if (tail <= tol * std::max(1.0, std::abs(value)))
                return {kTwoOverSqrtPi * value, k + 1, kTwoOverSqrtPi * tail};
        }
    }
    throw Error(ErrorKind::NoConvergence, "erf scaled series");
}

// erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), Re z > 0.
SeriesResult erfc_continued_fraction(cplx z, double tol)
{
    const double tiny = 1e-300;
    cplx f = z;
    cplx c = f, d = 0.0;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        const double a = 0.5 * k;
        d = z + a * d;
        if (d == cplx(0.0))
            d = tiny;
        c = z + a / c;
        if (c == cplx(0.0))
            c = tiny;
        d = 1.0 / d;
        const cplx delta = c * d;
        f *= delta;
        const double change = std::abs(delta - 1.0);
        if (change <= 0.25 * tol) {
            const cplx value = std::exp(-z * z) / (std::sqrt(std::numbers::pi) * f);
            return {value, k, change * std::abs(value)};
        }
    }
    throw Error(ErrorKind::NoConvergence, "erfc continued fraction");
}

}  // namespace

SeriesResult erf_series(cplx z, double tol)
{
    if (std::abs(z) > kErfMaxAbs)
        throw Error(ErrorKind::OutOfRange, "erf argument outside |z| <= 8");
    // erf(-z) = -erf(z): evaluate on the half plane Re z > 0 (or the upper imaginary axis).
    if (z.real() < 0 || (z.real() == 0 && z.imag() < 0)) {
        SeriesResult r = erf_series(-z, tol);
        r.value = -r.value;
        return r;
    }
    if (z == cplx(0.0))
        return {0.0, 0, 0.0};
    const double x2 = z.real() * z.real(), y2 = z.imag() * z.imag();
    // Both series lose about exp(2 min(x^2, y^2)) to cancellation.
    if (std::min(x2, y2) < 3.0)
        return y2 >= x2 ? erf_maclaurin(z, tol) : erf_scaled_series(z, tol);
    SeriesResult r = erfc_continued_fraction(z, tol);
    r.value = 1.0 - r.value;
    return r;
}

cplx erf_c(cplx z, double tol) { return erf_series(z, tol).value; }

SeriesResult kummer_series(cplx a, cplx b, cplx z, double tol)
{
    if (b.imag() == 0.0 && b.real() <= 0.0 && b.real() == std::floor(b.real()))
        throw Error(ErrorKind::PoleInParameter, "1F1 lower parameter is a non-positive integer");
    cplx term = 1.0, sum = 1.0;
    const double settle = std::abs(a) + std::abs(b) + 2.0 * std::abs(z);
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        const cplx ratio = (a + static_cast<double>(k)) / (b + static_cast<double>(k)) * z / static_cast<double>(k + 1);
        term *= ratio;
        sum += term;
        if (term == cplx(0.0))
            return {sum, k + 2, 0.0};  // terminating series
        if (k < settle)
            continue;
        const double next = std::abs((a + static_cast<double>(k + 1)) / (b + static_cast<double>(k + 1))) *
                            std::abs(z) / (k + 2);
        if (next < 1.0) {
            const double tail = std::abs(term) * next / (1.0 - next);
            if (tail <= tol * std::max(1.0, std::abs(sum)))
                return {sum, k + 2, tail};
        }
    }
    throw Error(ErrorKind::NoConvergence, "1F1 series");
}

cplx kummer_1f1(cplx a, cplx b, cplx z, double tol) { return kummer_series(a, b, z, tol).value; }

double reciprocal_gamma_half_integer(double x)
{
    const double twice = 2.0 * x;
    if (twice != std::round(twice))
        throw Error(ErrorKind::InvalidArgument, "argument is not a multiple of 1/2");
    if (x <= 0 && x == std::floor(x))
        return 0.0;
    // Gamma(1/2) = sqrt(pi), Gamma(1) = 1, then Gamma(x+1) = x Gamma(x) in either direction.
    const bool half = std::abs(twice - 2.0 * std::floor(x)) > 0.5;
    double base = half ? 0.5 : 1.0;
    double gamma = half ? std::sqrt(std::numbers::pi) : 1.0;
    while (base < x - 0.25) {
        gamma *= base;
        base += 1.0;
    }
    while (base > x + 0.25) {
        base -= 1.0;
        gamma /= base;
    }
    return 1.0 / gamma;
}

cplx hermite_h(int nu, cplx z, double tol)
{
    if (nu >= 0) {
        cplx h0 = 1.0;
        if (nu == 0)
            return h0;
        cplx h1 = 2.0 * z;
        for (int n = 1; n < nu; ++n) {
            const cplx h2 = 2.0 * z * h1 - 2.0 * static_cast<double>(n) * h0;
            h0 = h1;
            h1 = h2;
        }
        return h1;
    }
    const double v = nu;
    const cplx z2 = z * z;
    const cplx even = reciprocal_gamma_half_integer((1.0 - v) / 2.0) * kummer_1f1(-v / 2.0, 0.5, z2, tol);
    const cplx odd = 2.0 * z * reciprocal_gamma_half_integer(-v / 2.0) * kummer_1f1((1.0 - v) / 2.0, 1.5, z2, tol);
    return std::pow(2.0, v) * std::sqrt(std::numbers::pi) * (even - odd);
}

}  // namespace solsurf
