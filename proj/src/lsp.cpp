#include "solsurf/lsp.hpp"

#include <cmath>
#include <string>

#include "solsurf/error.hpp"
#include "solsurf/quadrature.hpp"

namespace solsurf {

namespace {

double segment_distance(cplx p, cplx a, cplx b)
{
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

template <class Coef>
Mat2C run_polygon(const Coef& coef, Mat2C y, cplx from, const std::vector<cplx>& waypoints,
                  const IntegrateOptions& opt)
{
    detail::Dp45Options d;
    d.tol = opt.tol;
    d.renormalize_det = opt.renormalize_det;
    d.min_step = opt.min_step;
    cplx a = from;
    for (cplx b : waypoints) {
        if (b != a) {
            const cplx dz = b - a;
            y = detail::dp45_linear([&](double t) { return coef(a + t * dz, dz); }, y, d);
        }
        a = b;
    }
    return y;
}

Mat2C full_coefficient(const WeierstrassData& data, cplx z, cplx dz)
{
    const LocalSolution s = weierstrass_solution(data, z);
    const LaxPair p = build_UV(s.u, s.Q, data.lambda(), data.lambda(), s.u_z);
    return p.U * dz + p.V.adjoint() * std::conj(dz);
}

void check_path(const PathSpec& path)
{
    if (path.waypoints.empty())
        throw Error(ErrorKind::InvalidArgument, "path has no waypoints");
    path.check_clearance();
}

}  // namespace

double PathSpec::length() const
{
    double l = 0.0;
    for (std::size_t k = 1; k < waypoints.size(); ++k)
        l += std::abs(waypoints[k] - waypoints[k - 1]);
    return l;
}

void PathSpec::check_clearance() const
{
    for (cplx p : poles) {
        for (std::size_t k = 0; k < waypoints.size(); ++k) {
            const cplx b = waypoints[k], a = k ? waypoints[k - 1] : b;
            if (segment_distance(p, a, b) < clearance)
                throw Error(ErrorKind::PoleClearanceViolated,
                            "path passes within " + std::to_string(clearance) + " of a declared pole");
        }
    }
}

Mat2C reduced_coefficient_unit(const WeierstrassData& data, cplx z)
{
    const auto v = data.values(z);
    const cplx e2 = v.eta * v.eta;
    return {e2 * v.psi, -e2, e2 * v.psi * v.psi, -e2 * v.psi};
}

Mat2C reduced_coefficient(const WeierstrassData& data, cplx z)
{
    return data.lambda() * reduced_coefficient_unit(data, z);
}

Wavefunction continue_reduced(const WeierstrassData& data, const Wavefunction& from, const std::vector<cplx>& waypoints,
                              const IntegrateOptions& opt)
{
    Wavefunction w;
    w.lambda = data.lambda();
    w.which = System::Reduced;
    w.at = waypoints.empty() ? from.at : waypoints.back();
    if (data.lambda() == 0.0) {
        w.value = from.value;
        return w;
    }
    auto coef = [&](cplx z, cplx dz) { return reduced_coefficient(data, z) * dz; };
    w.value = run_polygon(coef, from.value, from.at, waypoints, opt);
    return w;
}

Wavefunction integrate_reduced(const WeierstrassData& data, const PathSpec& path, const IntegrateOptions& opt)
{
    check_path(path);
    Wavefunction start;
    start.at = path.start();
    start.lambda = data.lambda();
    return continue_reduced(data, start, {path.waypoints.begin() + 1, path.waypoints.end()}, opt);
}

Wavefunction continue_full(const WeierstrassData& data, const Wavefunction& from, const std::vector<cplx>& waypoints,
                           const IntegrateOptions& opt)
{
    Wavefunction w;
    w.lambda = data.lambda();
    w.which = System::Full;
    w.at = waypoints.empty() ? from.at : waypoints.back();
    auto coef = [&](cplx z, cplx dz) { return full_coefficient(data, z, dz); };
    w.value = run_polygon(coef, from.value, from.at, waypoints, opt);
    return w;
}

Wavefunction integrate_full(const WeierstrassData& data, const PathSpec& path, const IntegrateOptions& opt)
{
    check_path(path);
    Wavefunction start;
    start.at = path.start();
    start.lambda = data.lambda();
    start.which = System::Full;
    return continue_full(data, start, {path.waypoints.begin() + 1, path.waypoints.end()}, opt);
}

Wavefunction integrate_full(const SurfaceFields& fields, const PathSpec& path, const IntegrateOptions& opt)
{
    check_path(path);
    constexpr int probes = 5;
    constexpr double probe_h = 1e-3;
    for (std::size_t k = 1; k < path.waypoints.size(); ++k) {
        const cplx a = path.waypoints[k - 1], b = path.waypoints[k];
        for (int j = 0; j < probes; ++j) {
            const cplx z = a + (double(j) / (probes - 1)) * (b - a);
            const GmcResidual r = gmc_residual(fields, z, probe_h);
            if (r.max_abs() > kCompatibilityThreshold)
                throw Error(ErrorKind::IncompatibleSystem,
                            "GMC residual " + std::to_string(r.max_abs()) + " near the path");
        }
    }
    auto coef = [&](cplx z, cplx dz) {
        const LaxPair p = build_UV(fields, field_u_z(fields, z), z);
        return p.U * dz + p.V.adjoint() * std::conj(dz);
    };
    Wavefunction w;
    w.lambda = fields.lambda;
    w.which = System::Full;
    w.at = path.end();
    w.value = run_polygon(coef, Mat2C::identity(), path.start(), {path.waypoints.begin() + 1, path.waypoints.end()},
                          opt);
    return w;
}

namespace {

// Spectral integration on Gauss-Legendre nodes mapped to [0, 1].
struct LegendreIntegrator {
    GaussLegendreRule rule;
    std::vector<double> t;                       // nodes in [0, 1]
    std::vector<std::vector<double>> cumulative;  // cumulative[i][j]: weight of f_j in int_0^{t_i} f

    explicit LegendreIntegrator(int n) : rule(gauss_legendre(n)), t(n), cumulative(n, std::vector<double>(n, 0.0))
    {
        // P[k][i] = P_k(x_i), k = 0..n
        std::vector<std::vector<double>> P(n + 1, std::vector<double>(n));
        for (int i = 0; i < n; ++i) {
            const double x = rule.nodes[i];
            t[i] = 0.5 * (x + 1.0);
            P[0][i] = 1.0;
            if (n >= 1)
                P[1][i] = x;
            for (int k = 1; k < n; ++k)
                P[k + 1][i] = ((2 * k + 1) * x * P[k][i] - k * P[k - 1][i]) / (k + 1);
        }
        // integral from -1 to x_i of P_k
        std::vector<std::vector<double>> I(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i) {
            I[0][i] = rule.nodes[i] + 1.0;
            for (int k = 1; k < n; ++k)
                I[k][i] = (P[k + 1][i] - P[k - 1][i]) / (2 * k + 1);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k)
                    s += I[k][i] * (2 * k + 1) * 0.5 * rule.weights[j] * P[k][j];
                cumulative[i][j] = 0.5 * s;
            }
    }

    std::size_t size() const { return t.size(); }
};

Mat2C picard_at(const WeierstrassData& data, cplx z, int order, int n)
{
    const LegendreIntegrator li(n);
    const cplx z0 = data.z0(), dz = z - z0;
    std::vector<Mat2C> H(n), theta(n, Mat2C::identity());
    for (int i = 0; i < n; ++i)
        H[i] = reduced_coefficient_unit(data, z0 + li.t[i] * dz) * dz;
    Mat2C sum = Mat2C::identity();
    cplx lam_pow = 1.0;
    for (int j = 1; j <= order; ++j) {
        std::vector<Mat2C> f(n);
        for (int i = 0; i < n; ++i)
            f[i] = H[i] * theta[i];
        Mat2C end = Mat2C::zero();
        for (int i = 0; i < n; ++i)
            end += (0.5 * li.rule.weights[i]) * f[i];
        for (int i = 0; i < n; ++i) {
            Mat2C acc = Mat2C::zero();
            for (int k = 0; k < n; ++k)
                acc += li.cumulative[i][k] * f[k];
            theta[i] = acc;
        }
        lam_pow *= data.lambda();
        sum += lam_pow * end;
    }
    return sum;
}

}  // namespace

Mat2C picard_series(const WeierstrassData& data, cplx z, int order, double tol)
{
    if (order < 0 || order > 8)
        throw Error(ErrorKind::InvalidArgument, "Picard order must be in 0..8");
    if (order == 0)
        return Mat2C::identity();
    Mat2C prev = picard_at(data, z, order, 32);
    for (int n : {64, 128, 256}) {
        const Mat2C next = picard_at(data, z, order, n);
        if ((next - prev).max_norm() <= tol * std::max(1.0, next.max_norm()))
            return next;
        prev = next;
    }
    throw Error(ErrorKind::QuadratureFailure, "nested Gauss-Legendre integrals did not settle at 256 nodes");
}

namespace {

constexpr double kBranchMargin = 1e-2;

Mat2C gauge_from_phase(const WeierstrassData::Values& v, cplx s)
{
    const double n = 1.0 / std::sqrt(1.0 + std::norm(v.psi));
    const cplx sb = std::conj(s);
    return n * Mat2C{sb * std::conj(v.psi), s, -sb, s * v.psi};
}

cplx pick_phase(const WeierstrassData::Values& v, cplx seed)
{
    const double a = std::abs(v.eta);
    if (!(a > 1e-300))
        throw Error(ErrorKind::BranchAmbiguity, "eta vanishes; gauge branch undefined");
    cplx s = v.eta / a;
    const double align = (std::conj(s) * seed).real();
    if (std::abs(align) < kBranchMargin * std::abs(seed))
        throw Error(ErrorKind::BranchAmbiguity, "both square-root branches equidistant from the tracked phase");
    if (align < 0)
        s = -s;
    return s;
}

}  // namespace

Mat2C gauge_matrix(const WeierstrassData& data, cplx z, cplx branch_seed)
{
    const auto v = data.values(z);
    return gauge_from_phase(v, pick_phase(v, branch_seed));
}

Mat2C GaugeTracker::at(cplx z)
{
    const auto v = data_->values(z);
    phase_ = pick_phase(v, phase_);
    return gauge_from_phase(v, phase_);
}

GaugeReport gauge_residual(const WeierstrassData& data, const PathSpec& path, int samples_per_segment, double h,
                           const IntegrateOptions& opt)
{
    check_path(path);
    GaugeReport rep;
    const cplx z0 = path.start();
    GaugeTracker tracker(data, data.values(z0).eta);
    const Mat2C M0 = tracker.at(z0);
    const Mat2C M0inv = M0.inverse();

    Wavefunction phi;
    phi.at = z0;
    phi.lambda = data.lambda();
    phi.which = System::Full;

    auto psi_tilde = [&](const Wavefunction& base, cplx w, cplx phase) {
        const Wavefunction moved = continue_full(data, base, {w}, opt);
        GaugeTracker local(data, phase);
        return local.at(w) * moved.value * M0inv;
    };

    for (std::size_t k = 1; k < path.waypoints.size(); ++k) {
        const cplx a = path.waypoints[k - 1], b = path.waypoints[k];
        for (int j = 1; j <= samples_per_segment; ++j) {
            const cplx p = a + (double(j) / samples_per_segment) * (b - a);
            phi = continue_full(data, phi, {p}, opt);
            const Mat2C M = tracker.at(p);
            const Mat2C pt = M * phi.value * M0inv;
            const cplx phase = tracker.phase();
            const Mat2C px = (1.0 / (2 * h)) * (psi_tilde(phi, p + h, phase) - psi_tilde(phi, p - h, phase));
            const Mat2C py = (1.0 / (2 * h)) * (psi_tilde(phi, p + cplx(0, h), phase) -
                                                psi_tilde(phi, p - cplx(0, h), phase));
            const Mat2C dz = 0.5 * (px - cplx(0, 1) * py);
            const Mat2C dzb = 0.5 * (px + cplx(0, 1) * py);
            const Mat2C resid = dz * pt.inverse() - reduced_coefficient(data, p);
            rep.reduced_residual = std::max(rep.reduced_residual, resid.max_norm());
            rep.antiholo_residual = std::max(rep.antiholo_residual, dzb.max_norm());
            rep.unitarity = std::max(rep.unitarity, (M.adjoint() * M - Mat2C::identity()).max_norm());
            const Mat2C g_full = phi.value.adjoint() * phi.value;
            const Mat2C g_red = pt.adjoint() * pt;
            rep.trace_det_gap = std::max({rep.trace_det_gap, std::abs(g_full.trace() - g_red.trace()),
                                          std::abs(g_full.det() - g_red.det())});
            ++rep.samples;
        }
    }
    return rep;
}

}  // namespace solsurf
