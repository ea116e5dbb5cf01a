#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "solsurf/expr.hpp"
#include "solsurf/mcore.hpp"

namespace solsurf {

/// Two meromorphic functions (eta, psi) with spectral parameter and base point.
/// Derivatives are taken symbolically once and cached.
class WeierstrassData {
public:
    WeierstrassData(Expr eta, Expr psi, double lambda, cplx z0 = 0.0, ParamMap params = {});

    struct Values {
        cplx eta, eta_z, psi, psi_z;
    };

    /// Evaluates eta, psi and their derivatives; DomainError at poles and zeros of eta.
    Values values(cplx z) const;

    const Expr& eta() const { return eta_; }
    const Expr& psi() const { return psi_; }
    const Expr& eta_prime() const { return eta_z_; }
    const Expr& psi_prime() const { return psi_z_; }
    double lambda() const { return lambda_; }
    cplx z0() const { return z0_; }
    const ParamMap& params() const { return params_; }
    const EvalOptions& eval_options() const { return eval_options_; }

    WeierstrassData with_lambda(double lambda) const;
    WeierstrassData with_base(cplx z0) const;
    void set_eval_options(const EvalOptions& options) { eval_options_ = options; }

private:
    Expr eta_, psi_, eta_z_, psi_z_;
    double lambda_;
    cplx z0_;
    ParamMap params_;
    EvalOptions eval_options_;
};

/// Fields (u, Q, H) over the plane plus the constant lambda. u_z may be left
/// empty, in which case it is obtained by finite differences of u.
struct SurfaceFields {
    std::function<double(cplx)> u;
    std::function<cplx(cplx)> Q;
    std::function<double(cplx)> H;
    double lambda = 0.0;
    std::function<cplx(cplx)> u_z;
};

struct LocalSolution {
    double u;
    cplx Q;
    cplx u_z;
};

/// e^{u/2} = |eta|^2 (1 + |psi|^2), Q = -eta^2 psi', u_z analytic.
LocalSolution weierstrass_solution(const WeierstrassData& data, cplx z);

/// The fields of weierstrass_solution with H = lambda.
SurfaceFields weierstrass_fields(const WeierstrassData& data);

/// Q = 1, e^u = |psi'|^{-2} (1 + |psi|^2)^2, H = lambda.
SurfaceFields liouville_fields(const Expr& psi, double lambda, const ParamMap& params = {});

inline constexpr double kDefaultWirtingerStep = 1e-4;

/// Central-difference Wirtinger derivatives with one Richardson level.
/// Failing stencil evaluations surface as StencilOutOfDomain.
cplx d_z(const std::function<cplx(cplx)>& f, cplx z, double h = kDefaultWirtingerStep);
cplx d_zbar(const std::function<cplx(cplx)>& f, cplx z, double h = kDefaultWirtingerStep);
/// f_{z zbar} = Laplacian / 4.
double d_zzbar(const std::function<double(cplx)>& f, cplx z, double h = kDefaultWirtingerStep);
Mat2C d_z(const std::function<Mat2C(cplx)>& f, cplx z, double h = kDefaultWirtingerStep);
Mat2C d_zbar(const std::function<Mat2C(cplx)>& f, cplx z, double h = kDefaultWirtingerStep);

struct GmcResidual {
    cplx r1;  ///< u_{z zbar} + (H^2 - lambda^2) e^u / 2 - 2 |Q|^2 e^{-u}
    cplx r2;  ///< Q_{zbar} - H_z e^u / 2
    double max_abs() const { return std::max(std::abs(r1), std::abs(r2)); }
};

GmcResidual gmc_residual(const SurfaceFields& fields, cplx z, double h = kDefaultWirtingerStep);

struct LaxPair {
    Mat2C U, V;
};

LaxPair build_UV(double u, cplx Q, double H, double lambda, cplx u_z);
LaxPair build_UV(const SurfaceFields& fields, cplx u_z, cplx z);

/// u_z from the field itself or, when absent, by finite differences.
cplx field_u_z(const SurfaceFields& fields, cplx z, double h = kDefaultWirtingerStep);

/// U_{zbar} - (V^dagger)_z + [U, V^dagger].
Mat2C zero_curvature_residual(const SurfaceFields& fields, cplx z, double h = kDefaultWirtingerStep);
Mat2C zero_curvature_residual(const WeierstrassData& data, cplx z, double h = kDefaultWirtingerStep);

}  // namespace solsurf
