#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solsurf/expr.hpp"
#include "solsurf/geom.hpp"
#include "solsurf/immersion.hpp"

namespace solsurf {

/// w'' + p w' + q w = 0.
struct OdeSpec {
    Expr p, q;
    double lambda = 1.0;
    ParamMap params;
};

/// Logarithmic derivative f'/f, simplified through products, quotients,
/// constant powers, exp and sqrt.
Expr log_derivative(const Expr& f);

/// The polynomial e equals numerically (Fourier fit on a circle about 0,
/// verified off the circle), with near-integer coefficients snapped; or nullopt.
std::optional<Expr> recognize_polynomial(const Expr& e, const ParamMap& params = {}, int max_degree = 8);

/// p = -2 eta'/eta, q = -lambda eta^2 psi'.
OdeSpec ode_coefficients(const WeierstrassData& data);

/// Q(z, lambda) = (ln eta)'' - ((ln eta)')^2 - lambda eta^2 psi'.
Expr standard_potential(const WeierstrassData& data);

/// eta = c exp(-1/2 int p), psi = -(1/lambda) int q / eta^2 - c1. Antiderivatives are
/// closed-form for polynomial p of degree <= 1 with polynomial q (constant q when
/// p has degree 1); otherwise integral(..., z0) nodes.
WeierstrassData weierstrass_from_ode(const OdeSpec& spec, cplx c = 1.0, cplx c1 = 0.0, cplx z0 = 0.0);

/// eta = c e^{z^2/2}, psi = n sqrt(pi)/(lambda c^2) erf(z) - c1, base point 1.
WeierstrassData erf_example_data(int n, cplx c, cplx c1, double lambda);

struct ErfExample {
    WeierstrassData data;
    SurfacePatch patch;
    double constancy = 0;  ///< max |lambda eta^2 psi' - 2n| over the grid
};

ErfExample erf_example_surface(int n, cplx c, cplx c1, double lambda, const Rect& domain,
                               const SampleOptions& options = {});

/// Residuals of the scalar reductions for each column of the integrated Psi
/// at z, using 5-point differences of step h along the real direction.
struct BridgeResiduals {
    double ode = 0;          ///< alpha'' + p alpha' + q alpha
    double elimination = 0;  ///< beta - (psi alpha - alpha' / (lambda eta^2))
    double standard = 0;     ///< y'' + Q y for y = alpha / eta
};

BridgeResiduals bridge_residuals(const WeierstrassData& data, cplx z, double h = 1e-3, double tol = 1e-13);

struct CrossCheck {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
    bool below = true;  ///< pass when value < threshold (else value > threshold)
    std::string note;
};

struct KummerReport {
    cplx sigma;
    Mat2C printed_at_base;
    std::vector<CrossCheck> checks;
    bool all_pass() const;
};

/// Compares the printed closed-form columns with the integrated wavefunction.
KummerReport kummer_crosscheck(int n, cplx c, cplx c1, double lambda, cplx z);

}  // namespace solsurf
