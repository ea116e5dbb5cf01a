#pragma once

#include "solsurf/mcore.hpp"

namespace solsurf {

struct SeriesResult {
    cplx value;
    int terms_used = 0;
    double truncation_estimate = 0;
};

inline constexpr double kErfMaxAbs = 8.0;
inline constexpr int kMaxSeriesTerms = 20000;

/// erf(z) for |z| <= 8. Power series near the axes, Laplace continued
/// fraction for erfc in the diagonal sectors. Convergence is declared when
/// the truncation estimate drops below tol * max(1, |value|).
/// Throws OutOfRange for |z| > 8, NoConvergence if the term cap is hit.
SeriesResult erf_series(cplx z, double tol = 1e-15);
cplx erf_c(cplx z, double tol = 1e-15);

/// Kummer 1F1(a; b; z) by direct summation with term-ratio monitoring.
/// Throws PoleInParameter when b is a non-positive integer.
SeriesResult kummer_series(cplx a, cplx b, cplx z, double tol = 1e-15);
cplx kummer_1f1(cplx a, cplx b, cplx z, double tol = 1e-15);

/// 1/Gamma(x) for x a multiple of 1/2 (zero at non-positive integers).
double reciprocal_gamma_half_integer(double x);

/// Hermite polynomial (nu >= 0) or Hermite function (nu < 0) H_nu(z).
cplx hermite_h(int nu, cplx z, double tol = 1e-15);

}  // namespace solsurf
