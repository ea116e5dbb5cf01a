#include "solsurf/geom.hpp"

#include <cmath>

#include "solsurf/error.hpp"

namespace solsurf {

namespace {

void require_bound(const Expr& e, const ParamMap& params)
{
    for (const auto& name : e.parameter_names())
        if (!params.count(name))
            throw Error(ErrorKind::UnboundParameter, "parameter '" + name + "' has no value");
}

template <class F>
auto on_stencil(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DomainError || e.kind() == ErrorKind::PoleOrOverflow)
            throw Error(ErrorKind::StencilOutOfDomain, e.what());
        throw;
    }
}

template <class T, class F>
T central_x(const F& f, cplx z, double h)
{
    return (1.0 / (2.0 * h)) * (f(z + h) - f(z - h));
}

template <class T, class F>
T central_y(const F& f, cplx z, double h)
{
    const cplx ih(0.0, h);
    return (1.0 / (2.0 * h)) * (f(z + ih) - f(z - ih));
}

template <class T, class F>
T richardson(const F& d, double h)
{
    return (1.0 / 3.0) * (4.0 * d(0.5 * h) - d(h));
}

// sign = -1 for d/dz, +1 for d/dzbar
template <class T, class F>
T wirtinger(const F& f, cplx z, double h, double sign)
{
    return on_stencil([&] {
        auto d = [&](double step) -> T {
            const T dx = central_x<T>(f, z, step), dy = central_y<T>(f, z, step);
            return 0.5 * (dx + cplx(0.0, sign) * dy);
        };
        return richardson<T>(d, h);
    });
}

}  // namespace

WeierstrassData::WeierstrassData(Expr eta, Expr psi, double lambda, cplx z0, ParamMap params)
    : eta_(std::move(eta)),
      psi_(std::move(psi)),
      eta_z_(eta_.derivative()),
      psi_z_(psi_.derivative()),
      lambda_(lambda),
      z0_(z0),
      params_(std::move(params))
{
    require_bound(eta_, params_);
    require_bound(psi_, params_);
}

WeierstrassData::Values WeierstrassData::values(cplx z) const
{
    Values v;
    try {
        v.eta = eta_.eval(z, params_, eval_options_);
        v.eta_z = eta_z_.eval(z, params_, eval_options_);
        v.psi = psi_.eval(z, params_, eval_options_);
        v.psi_z = psi_z_.eval(z, params_, eval_options_);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::PoleOrOverflow)
            throw Error(ErrorKind::DomainError, std::string("data not finite: ") + e.what());
        throw;
    }
    const double size = std::norm(v.eta) * (1.0 + std::norm(v.psi));
    if (!(size > 0.0) || !std::isfinite(size))
        throw Error(ErrorKind::DomainError, "eta vanishes or overflows");
    return v;
}

WeierstrassData WeierstrassData::with_lambda(double lambda) const
{
    WeierstrassData d = *this;
    d.lambda_ = lambda;
    return d;
}

WeierstrassData WeierstrassData::with_base(cplx z0) const
{
    WeierstrassData d = *this;
    d.z0_ = z0;
    return d;
}

LocalSolution weierstrass_solution(const WeierstrassData& data, cplx z)
{
    const auto v = data.values(z);
    const double p2 = 1.0 + std::norm(v.psi);
    LocalSolution s;
    s.u = 2.0 * std::log(std::norm(v.eta) * p2);
    s.Q = -v.eta * v.eta * v.psi_z;
    s.u_z = 2.0 * v.eta_z / v.eta + 2.0 * v.psi_z * std::conj(v.psi) / p2;
    if (!std::isfinite(s.u) || !std::isfinite(std::abs(s.Q)) || !std::isfinite(std::abs(s.u_z)))
        throw Error(ErrorKind::DomainError, "surface fields not finite");
    return s;
}

SurfaceFields weierstrass_fields(const WeierstrassData& data)
{
    SurfaceFields f;
    f.u = [data](cplx z) { return weierstrass_solution(data, z).u; };
    f.Q = [data](cplx z) { return weierstrass_solution(data, z).Q; };
    const double lambda = data.lambda();
    f.H = [lambda](cplx) { return lambda; };
    f.lambda = lambda;
    f.u_z = [data](cplx z) { return weierstrass_solution(data, z).u_z; };
    return f;
}

SurfaceFields liouville_fields(const Expr& psi, double lambda, const ParamMap& params)
{
    const Expr dpsi = psi.derivative();
    SurfaceFields f;
    f.u = [psi, dpsi, params](cplx z) {
        const cplx p = psi.eval(z, params), dp = dpsi.eval(z, params);
        if (dp == 0.0)
            throw Error(ErrorKind::DomainError, "psi' vanishes");
        return 2.0 * std::log(1.0 + std::norm(p)) - std::log(std::norm(dp));
    };
    f.Q = [](cplx) { return cplx(1.0); };
    f.H = [lambda](cplx) { return lambda; };
    f.lambda = lambda;
    return f;
}

cplx d_z(const std::function<cplx(cplx)>& f, cplx z, double h) { return wirtinger<cplx>(f, z, h, -1.0); }

cplx d_zbar(const std::function<cplx(cplx)>& f, cplx z, double h) { return wirtinger<cplx>(f, z, h, 1.0); }

Mat2C d_z(const std::function<Mat2C(cplx)>& f, cplx z, double h) { return wirtinger<Mat2C>(f, z, h, -1.0); }

Mat2C d_zbar(const std::function<Mat2C(cplx)>& f, cplx z, double h) { return wirtinger<Mat2C>(f, z, h, 1.0); }

double d_zzbar(const std::function<double(cplx)>& f, cplx z, double h)
{
    return on_stencil([&] {
        const double f0 = f(z);
        auto lap = [&](double s) {
            const cplx is(0.0, s);
            return (f(z + s) + f(z - s) + f(z + is) + f(z - is) - 4.0 * f0) / (s * s);
        };
        return 0.25 * richardson<double>(lap, h);
    });
}

GmcResidual gmc_residual(const SurfaceFields& fields, cplx z, double h)
{
    const double u = on_stencil([&] { return fields.u(z); });
    const cplx Q = on_stencil([&] { return fields.Q(z); });
    const double H = on_stencil([&] { return fields.H(z); });
    const double eu = std::exp(u);
    const double u_zzb = d_zzbar(fields.u, z, h);
    const cplx Q_zb = d_zbar(fields.Q, z, h);
    const cplx H_z = d_z([&](cplx w) { return cplx(fields.H(w)); }, z, h);
    GmcResidual r;
    r.r1 = u_zzb + 0.5 * (H * H - fields.lambda * fields.lambda) * eu - 2.0 * std::norm(Q) / eu;
    r.r2 = Q_zb - 0.5 * H_z * eu;
    return r;
}

LaxPair build_UV(double u, cplx Q, double H, double lambda, cplx u_z)
{
    const double ehalf = std::exp(0.5 * u);
    LaxPair p;
    p.U = {0.25 * u_z, -Q / ehalf, 0.5 * ehalf * (lambda + H), -0.25 * u_z};
    p.V = {-0.25 * u_z, Q / ehalf, 0.5 * ehalf * (lambda - H), 0.25 * u_z};
    return p;
}

cplx field_u_z(const SurfaceFields& fields, cplx z, double h)
{
    if (fields.u_z)
        return fields.u_z(z);
    return d_z([&](cplx w) { return cplx(fields.u(w)); }, z, h);
}

LaxPair build_UV(const SurfaceFields& fields, cplx u_z, cplx z)
{
    return build_UV(fields.u(z), fields.Q(z), fields.H(z), fields.lambda, u_z);
}

Mat2C zero_curvature_residual(const SurfaceFields& fields, cplx z, double h)
{
    const double inner = 0.1 * h;
    auto U = [&](cplx w) { return build_UV(fields, field_u_z(fields, w, inner), w).U; };
    auto Vd = [&](cplx w) { return build_UV(fields, field_u_z(fields, w, inner), w).V.adjoint(); };
    const LaxPair here = on_stencil([&] { return build_UV(fields, field_u_z(fields, z, inner), z); });
    const Mat2C vd = here.V.adjoint();
    return d_zbar(std::function<Mat2C(cplx)>(U), z, h) - d_z(std::function<Mat2C(cplx)>(Vd), z, h) +
           commutator(here.U, vd);
}

Mat2C zero_curvature_residual(const WeierstrassData& data, cplx z, double h)
{
    return zero_curvature_residual(weierstrass_fields(data), z, h);
}

}  // namespace solsurf
