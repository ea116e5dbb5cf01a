#include "solsurf/immersion.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "solsurf/error.hpp"
#include "solsurf/quadrature.hpp"

namespace solsurf {

namespace {

using Vec3C = std::array<cplx, 3>;

void require_lambda(double lambda)
{
    if (lambda == 0.0)
        throw Error(ErrorKind::LambdaZero, "lambda must be nonzero");
}

Vec3C weierstrass_integrand(const WeierstrassData& data, cplx z)
{
    const auto v = data.values(z);
    const cplx e2 = v.eta * v.eta, p2 = v.psi * v.psi;
    return {0.5 * (1.0 - p2) * e2, cplx(0, 0.5) * (1.0 + p2) * e2, v.psi * e2};
}

Vec3C operator*(cplx s, Vec3C v)
{
    for (auto& x : v)
        x *= s;
    return v;
}

template <class V, class F>
V integrate_polygon(const F& integrand, cplx from, const std::vector<cplx>& waypoints, double tol)
{
    V acc{};
    cplx a = from;
    for (cplx b : waypoints) {
        if (b != a) {
            const cplx dz = b - a;
            auto f = [&](double t) -> V { return dz * integrand(a + t * dz); };
            acc = acc + integrate_gk<V>(f, 0.0, 1.0, tol);
        }
        a = b;
    }
    return acc;
}

double spatial_inner(const LorentzVec& a, const LorentzVec& b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }

double metric(bool lorentzian, const LorentzVec& a, const LorentzVec& b)
{
    return lorentzian ? lorentz_inner(a, b) : spatial_inner(a, b);
}

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double k)
{
    return a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g);
}

// n_a = eps_{abcd} A^b B^c C^d (Euclidean orthogonal to A, B, C).
LorentzVec generalized_cross(const LorentzVec& A, const LorentzVec& B, const LorentzVec& C)
{
    const double m[3][4] = {{A.x0, A.x1, A.x2, A.x3}, {B.x0, B.x1, B.x2, B.x3}, {C.x0, C.x1, C.x2, C.x3}};
    LorentzVec n;
    for (int a = 0; a < 4; ++a) {
        int cols[3], k = 0;
        for (int c = 0; c < 4; ++c)
            if (c != a)
                cols[k++] = c;
        const double d = det3(m[0][cols[0]], m[0][cols[1]], m[0][cols[2]], m[1][cols[0]], m[1][cols[1]],
                              m[1][cols[2]], m[2][cols[0]], m[2][cols[1]], m[2][cols[2]]);
        n[a] = (a % 2 ? -1.0 : 1.0) * d;
    }
    return n;
}

}  // namespace

LorentzVec sym_immersion(const Wavefunction& phi, double lambda)
{
    require_lambda(lambda);
    const double drift = std::abs(phi.value.det() - 1.0);
    if (drift > 1e-6)
        throw Error(ErrorKind::NotUnimodular, "wavefunction determinant drifted by " + std::to_string(drift));
    const Mat2C g = phi.value.adjoint() * phi.value;
    return lorentz_from_hermitian((1.0 / lambda) * g, 1e-10 * std::max(1.0, g.max_norm() / std::abs(lambda)));
}

LorentzVec shifted_immersion(const Wavefunction& phi, double lambda)
{
    require_lambda(lambda);
    const Mat2C g = phi.value.adjoint() * phi.value - Mat2C::identity();
    return lorentz_from_hermitian((1.0 / lambda) * g, 1e-10 * std::max(1.0, g.max_norm() / std::abs(lambda)));
}

Vec3 enneper_weierstrass(const WeierstrassData& data, const PathSpec& path, double tol)
{
    if (path.waypoints.empty())
        throw Error(ErrorKind::InvalidArgument, "path has no waypoints");
    path.check_clearance();
    const Vec3C c = integrate_polygon<Vec3C>([&](cplx z) { return weierstrass_integrand(data, z); }, path.start(),
                                             {path.waypoints.begin() + 1, path.waypoints.end()}, tol);
    return {c[0].real(), c[1].real(), c[2].real()};
}

Mat2C first_order_term(const WeierstrassData& data, const PathSpec& path, double tol)
{
    if (path.waypoints.empty())
        throw Error(ErrorKind::InvalidArgument, "path has no waypoints");
    path.check_clearance();
    return integrate_polygon<Mat2C>([&](cplx z) { return reduced_coefficient_unit(data, z); }, path.start(),
                                    {path.waypoints.begin() + 1, path.waypoints.end()}, tol);
}

LorentzVec clifford_limit(const WeierstrassData& data, const PathSpec& path, double tol)
{
    const Mat2C p1 = first_order_term(data, path, tol);
    return lorentz_from_hermitian(p1 + p1.adjoint());
}

Vec3 limit_from_enneper(const Vec3& f) { return {-2.0 * f[0], -2.0 * f[1], 2.0 * f[2]}; }

Vec3 enneper_from_limit(const LorentzVec& x) { return {-0.5 * x.x1, -0.5 * x.x2, 0.5 * x.x3}; }

std::string to_string(Target t)
{
    switch (t) {
    case Target::H3: return "h3";
    case Target::E3Limit: return "e3-limit";
    case Target::E3Direct: return "e3-direct";
    }
    return "?";
}

Target target_from_string(const std::string& s)
{
    if (s == "h3")
        return Target::H3;
    if (s == "e3-limit")
        return Target::E3Limit;
    if (s == "e3-direct")
        return Target::E3Direct;
    throw Error(ErrorKind::InvalidArgument, "unknown target '" + s + "' (h3, e3-limit, e3-direct)");
}

std::size_t SurfacePatch::valid_count() const
{
    std::size_t n = 0;
    for (const auto& r : records)
        n += r.valid;
    return n;
}

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("SOLSURF_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return unsigned(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct State {
    Mat2C wave = Mat2C::identity();
    Vec3C sum{};
    cplx at = 0.0;
};

class Sampler {
public:
    Sampler(const WeierstrassData& data, Target target, const SampleOptions& opt)
        : data_(data), target_(target), opt_(opt)
    {
        iopt_.tol = opt.tol;
        iopt_.renormalize_det = opt.renormalize_det;
    }

    State advance(const State& s, const std::vector<cplx>& waypoints) const
    {
        State out;
        out.at = waypoints.back();
        if (target_ == Target::E3Direct) {
            out.sum = s.sum + integrate_polygon<Vec3C>([&](cplx z) { return weierstrass_integrand(data_, z); }, s.at,
                                                       waypoints, opt_.tol);
        } else {
            Wavefunction w;
            w.value = s.wave;
            w.at = s.at;
            out.wave = continue_reduced(data_, w, waypoints, iopt_).value;
        }
        return out;
    }

    // Direct segment first, then detours on either side of it.
    std::optional<State> reach(const State& s, cplx to, double detour, std::string& failure) const
    {
        const cplx d = to - s.at;
        const cplx off = d == 0.0 ? cplx(0.0) : cplx(0, 1) * (d / std::abs(d)) * detour;
        const std::vector<std::vector<cplx>> routes = {
            {to}, {s.at + off, to + off, to}, {s.at - off, to - off, to}};
        for (const auto& r : routes) {
            try {
                return advance(s, r);
            } catch (const Error& e) {
                failure = e.what();
            }
        }
        return std::nullopt;
    }

    void finish(SurfacePatch& p, std::size_t k, const State& s) const
    {
        auto& rec = p.records[k];
        try {
            if (target_ == Target::E3Direct) {
                p.X[k] = LorentzVec{0.0, s.sum[0].real(), s.sum[1].real(), s.sum[2].real()};
            } else {
                Wavefunction w;
                w.value = s.wave;
                w.at = s.at;
                w.lambda = data_.lambda();
                p.wave[k] = s.wave;
                rec.det_drift = std::abs(s.wave.det() - 1.0);
                if (target_ == Target::H3) {
                    p.X[k] = sym_immersion(w, data_.lambda());
                    const double l = data_.lambda();
                    rec.hyperboloid = std::abs(lorentz_inner(p.X[k], p.X[k]) + 1.0 / (l * l));
                } else {
                    p.X[k] = shifted_immersion(w, data_.lambda());
                }
            }
            rec.valid = true;
        } catch (const Error& e) {
            rec.valid = false;
            rec.failure = e.what();
        }
    }

private:
    const WeierstrassData& data_;
    Target target_;
    SampleOptions opt_;
    IntegrateOptions iopt_;
};

}  // namespace

SurfacePatch sample_surface(const WeierstrassData& data, const Rect& domain, Target target,
                            const SampleOptions& options)
{
    if (options.nx < 2 || options.ny < 2)
        throw Error(ErrorKind::InvalidArgument, "resolution must be at least 2 per axis");
    if (target != Target::E3Direct)
        require_lambda(data.lambda());

    SurfacePatch p;
    p.target = target;
    p.lambda = data.lambda();
    p.domain = domain;
    p.nx = options.nx;
    p.ny = options.ny;
    p.z0 = data.z0();
    const std::size_t n = std::size_t(p.nx) * p.ny;
    p.z.resize(n);
    p.X.assign(n, LorentzVec{});
    p.wave.assign(n, Mat2C::identity());
    p.records.assign(n, SampleRecord{});

    std::vector<char> probe_ok(n, 0);
    for (int j = 0; j < p.ny; ++j)
        for (int i = 0; i < p.nx; ++i) {
            const std::size_t k = p.index(i, j);
            p.z[k] = cplx(domain.re_min + i * p.hx(), domain.im_min + j * p.hy());
            try {
                data.values(p.z[k]);
                probe_ok[k] = 1;
            } catch (const Error& e) {
                p.records[k].failure = e.what();
            }
        }

    const Sampler sampler(data, target, options);
    State base;
    base.at = data.z0();
    const double detour_x = 0.5 * p.hx(), detour_y = 0.5 * p.hy();

    // seed column
    std::vector<std::optional<State>> seed(p.ny);
    std::optional<State> last = base;
    for (int j = 0; j < p.ny; ++j) {
        const std::size_t k = p.index(0, j);
        if (!probe_ok[k])
            continue;
        std::string failure;
        seed[j] = sampler.reach(last ? *last : base, p.z[k], j == 0 ? detour_y : detour_x, failure);
        if (seed[j]) {
            last = seed[j];
            sampler.finish(p, k, *seed[j]);
        } else {
            p.records[k].failure = failure;
        }
    }

    // rows
    std::vector<std::optional<State>> row_start(p.ny);
    std::optional<State> below = base;
    for (int j = 0; j < p.ny; ++j) {
        if (seed[j])
            below = seed[j];
        row_start[j] = below;
    }

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int j = next++; j < p.ny; j = next++) {
            State cur = *row_start[j];
            for (int i = 1; i < p.nx; ++i) {
                const std::size_t k = p.index(i, j);
                if (!probe_ok[k])
                    continue;
                std::string failure;
                auto s = sampler.reach(cur, p.z[k], detour_y, failure);
                if (!s) {
                    p.records[k].failure = failure;
                    continue;
                }
                cur = *s;
                sampler.finish(p, k, cur);
            }
        }
    };
    const unsigned threads = std::min<unsigned>(resolve_threads(options.threads), unsigned(p.ny));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    return p;
}

namespace {

template <class At>
FrameSample frame_from_stencil(const At& at, double hx, double hy, bool lor, const LorentzVec* orient)
{
    auto d1 = [](const LorentzVec& m2, const LorentzVec& m1, const LorentzVec& p1, const LorentzVec& p2, double h) {
        return (1.0 / (12.0 * h)) * (m2 - 8.0 * m1 + 8.0 * p1 - p2);
    };
    auto d2 = [](const LorentzVec& m2, const LorentzVec& m1, const LorentzVec& c, const LorentzVec& p1,
                 const LorentzVec& p2, double h) {
        return (1.0 / (12.0 * h * h)) * (-1.0 * m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2);
    };
    auto dx_row = [&](int b) { return d1(at(-2, b), at(-1, b), at(1, b), at(2, b), hx); };

    FrameSample s;
    s.F = at(0, 0);
    s.F_x = dx_row(0);
    s.F_y = d1(at(0, -2), at(0, -1), at(0, 1), at(0, 2), hy);
    const LorentzVec Fxx = d2(at(-2, 0), at(-1, 0), s.F, at(1, 0), at(2, 0), hx);
    const LorentzVec Fyy = d2(at(0, -2), at(0, -1), s.F, at(0, 1), at(0, 2), hy);
    const LorentzVec Fxy = d1(dx_row(-2), dx_row(-1), dx_row(1), dx_row(2), hy);

    for (int c = 0; c < 4; ++c)
        s.F_z[c] = 0.5 * cplx(s.F_x[c], -s.F_y[c]);

    const double gxx = metric(lor, s.F_x, s.F_x), gyy = metric(lor, s.F_y, s.F_y), gxy = metric(lor, s.F_x, s.F_y);
    const double e_u = 0.5 * (gxx + gyy);
    if (!(e_u > 0.0))
        throw Error(ErrorKind::DegenerateFrame, "tangent vectors degenerate");
    s.u = std::log(e_u);
    s.conformality = 0.25 * std::hypot(gxx - gyy, 2.0 * gxy);

    LorentzVec N;
    if (lor) {
        N = generalized_cross(s.F, s.F_x, s.F_y);
        N.x0 = -N.x0;
    } else {
        N = LorentzVec{0.0, s.F_x.x2 * s.F_y.x3 - s.F_x.x3 * s.F_y.x2, s.F_x.x3 * s.F_y.x1 - s.F_x.x1 * s.F_y.x3,
                       s.F_x.x1 * s.F_y.x2 - s.F_x.x2 * s.F_y.x1};
    }
    const double nn = metric(lor, N, N);
    const double scale = lor ? std::sqrt(std::max(std::abs(lorentz_inner(s.F, s.F)), 1e-300)) * e_u : e_u;
    if (!(nn > 1e-24 * scale * scale))
        throw Error(ErrorKind::DegenerateFrame, "normal system rank-deficient");
    N = (1.0 / std::sqrt(nn)) * N;

    const LorentzVec Fzzb = 0.25 * (Fxx + Fyy);
    double sign = 1.0;
    if (orient)
        sign = metric(lor, N, *orient) < 0 ? -1.0 : 1.0;
    else
        sign = metric(lor, Fzzb, N) < 0 ? -1.0 : 1.0;
    s.N = sign * N;
    s.raw_sign = sign > 0 ? 1 : -1;

    s.H_est = 2.0 * metric(lor, Fzzb, s.N) / e_u;
    s.Q_est = 0.25 * cplx(metric(lor, Fxx, s.N) - metric(lor, Fyy, s.N), -2.0 * metric(lor, Fxy, s.N));
    const double fscale = lor ? std::max(1.0, std::sqrt(std::abs(lorentz_inner(s.F, s.F)))) : 1.0;
    s.normal_defect = std::max({std::abs(metric(lor, s.N, s.N) - 1.0),
                                lor ? std::abs(lorentz_inner(s.F, s.N)) / fscale : 0.0,
                                std::abs(metric(lor, s.F_x, s.N)) / std::sqrt(e_u),
                                std::abs(metric(lor, s.F_y, s.N)) / std::sqrt(e_u)});
    return s;
}

}  // namespace

FrameSample frame_and_curvature(const SurfacePatch& patch, int i, int j, const LorentzVec* orient)
{
    if (i < 2 || j < 2 || i > patch.nx - 3 || j > patch.ny - 3)
        throw Error(ErrorKind::StencilOutOfDomain, "frame needs a two-cell margin");
    for (int b = -2; b <= 2; ++b)
        for (int a = -2; a <= 2; ++a)
            if (!patch.valid(i + a, j + b))
                throw Error(ErrorKind::StencilOutOfDomain, "masked sample inside the frame stencil");

    return frame_from_stencil([&](int a, int b) { return patch.X[patch.index(i + a, j + b)]; }, patch.hx(),
                              patch.hy(), patch.lorentzian(), orient);
}

std::vector<std::optional<FrameSample>> frame_field(const SurfacePatch& patch)
{
    std::vector<std::optional<FrameSample>> out(patch.X.size());
    std::optional<LorentzVec> first;
    for (int j = 2; j < patch.ny - 2; ++j)
        for (int i = 2; i < patch.nx - 2; ++i) {
            const LorentzVec* ref = nullptr;
            if (i > 2 && out[patch.index(i - 1, j)])
                ref = &out[patch.index(i - 1, j)]->N;
            else if (j > 2 && out[patch.index(i, j - 1)])
                ref = &out[patch.index(i, j - 1)]->N;
            else if (first)
                ref = &*first;
            try {
                out[patch.index(i, j)] = frame_and_curvature(patch, i, j, ref);
                if (!first)
                    first = out[patch.index(i, j)]->N;
            } catch (const Error&) {
            }
        }
    return out;
}

namespace {

struct Probe {
    Mat2C wave = Mat2C::identity();
    Vec3 sum{};
    cplx at = 0.0;
};

Probe probe_step(const WeierstrassData& data, Target t, const Probe& p, cplx to, double tol)
{
    Probe out = p;
    out.at = to;
    if (t == Target::E3Direct) {
        const Vec3 d = enneper_weierstrass(data, PathSpec::straight(p.at, to), tol);
        for (int c = 0; c < 3; ++c)
            out.sum[c] += d[c];
    } else {
        Wavefunction w;
        w.value = p.wave;
        w.at = p.at;
        IntegrateOptions opt;
        opt.tol = tol;
        out.wave = continue_reduced(data, w, {to}, opt).value;
    }
    return out;
}

LorentzVec probe_value(const WeierstrassData& data, Target t, const Probe& p)
{
    if (t == Target::E3Direct)
        return LorentzVec{0.0, p.sum[0], p.sum[1], p.sum[2]};
    Wavefunction w;
    w.value = p.wave;
    w.at = p.at;
    w.lambda = data.lambda();
    return t == Target::H3 ? sym_immersion(w, data.lambda()) : shifted_immersion(w, data.lambda());
}

void flip(FrameSample& s)
{
    s.N = -1.0 * s.N;
    s.H_est = -s.H_est;
    s.Q_est = -s.Q_est;
}

}  // namespace

FrameSample local_frame(const WeierstrassData& data, const SurfacePatch& patch, std::size_t k, double h, double tol)
{
    if (!patch.records[k].valid)
        throw Error(ErrorKind::StencilOutOfDomain, "masked sample");
    Probe c;
    c.at = patch.z[k];
    c.wave = patch.wave[k];
    c.sum = {patch.X[k].x1, patch.X[k].x2, patch.X[k].x3};

    std::array<LorentzVec, 25> X;
    auto slot = [](int a, int b) { return std::size_t((b + 2) * 5 + (a + 2)); };
    X[slot(0, 0)] = patch.X[k];
    std::array<Probe, 5> axis;
    axis[2] = c;
    for (int dir : {1, -1})
        for (int a = dir; std::abs(a) <= 2; a += dir) {
            axis[a + 2] = probe_step(data, patch.target, axis[a - dir + 2], c.at + double(a) * h, tol);
            X[slot(a, 0)] = probe_value(data, patch.target, axis[a + 2]);
        }
    for (int a = -2; a <= 2; ++a)
        for (int dir : {1, -1}) {
            Probe p = axis[a + 2];
            for (int b = dir; std::abs(b) <= 2; b += dir) {
                p = probe_step(data, patch.target, p, c.at + cplx(a * h, b * h), tol);
                X[slot(a, b)] = probe_value(data, patch.target, p);
            }
        }
    return frame_from_stencil([&](int a, int b) { return X[slot(a, b)]; }, h, h, patch.lorentzian(), nullptr);
}

std::vector<std::optional<FrameSample>> local_frame_field(const WeierstrassData& data, const SurfacePatch& patch,
                                                          double h, double tol)
{
    std::vector<std::optional<FrameSample>> out(patch.X.size());
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int j = next++; j < patch.ny; j = next++)
            for (int i = 0; i < patch.nx; ++i) {
                const std::size_t k = patch.index(i, j);
                if (!patch.records[k].valid)
                    continue;
                try {
                    out[k] = local_frame(data, patch, k, h, tol);
                } catch (const Error&) {
                }
            }
    };
    const unsigned threads = std::min<unsigned>(resolve_threads(0), unsigned(patch.ny));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    int orientation = 0;
    for (auto& f : out) {
        if (!f)
            continue;
        if (orientation == 0)
            orientation = f->raw_sign;
        if (f->raw_sign != orientation) {
            flip(*f);
            f->raw_sign = orientation;
        }
    }
    return out;
}

LoopPeriod loop_period(const WeierstrassData& data, const std::vector<cplx>& loop, double tol)
{
    LoopPeriod lp;
    if (loop.size() < 2)
        return lp;
    const PathSpec path = PathSpec::through(loop);
    lp.real_period = enneper_weierstrass(data, path, tol);
    const Wavefunction w = integrate_reduced(data, path, {tol});
    lp.monodromy = (w.value - Mat2C::identity()).max_norm();
    return lp;
}

}  // namespace solsurf
