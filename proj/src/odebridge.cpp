#include "solsurf/odebridge.hpp"

#include <cmath>
#include <numbers>

#include "solsurf/error.hpp"
#include "solsurf/lsp.hpp"
#include "solsurf/specfun.hpp"

namespace solsurf {

namespace {

using Poly = std::vector<cplx>;

Expr num(cplx v) { return Expr::number(v); }

double snap(double x, double scale)
{
    const double r = std::round(x);
    return std::abs(x - r) < 1e-11 * scale ? r : x;
}

std::optional<Poly> as_polynomial(const Expr& e, const ParamMap& params)
{
    if (auto p = polynomial_coefficients(e, params))
        return p;
    if (auto r = recognize_polynomial(e, params))
        return polynomial_coefficients(*r, params);
    return std::nullopt;
}

Expr simplified(const Expr& e, const ParamMap& params)
{
    if (auto c = polynomial_coefficients(e, params))
        return polynomial_expr(*c);
    if (auto r = recognize_polynomial(e, params))
        return *r;
    return e;
}

}  // namespace

Expr log_derivative(const Expr& f)
{
    using K = Expr::Kind;
    switch (f.kind()) {
    case K::Number:
    case K::Parameter: return num(0.0);
    case K::Mul: return log_derivative(f.lhs()) + log_derivative(f.rhs());
    case K::Div: return log_derivative(f.lhs()) - log_derivative(f.rhs());
    case K::Neg: return log_derivative(f.lhs());
    case K::Pow:
        if (!f.rhs().depends_on_z())
            return f.rhs() * log_derivative(f.lhs());
        break;
    case K::Call:
        if (f.func() == Func::Exp)
            return f.lhs().derivative();
        if (f.func() == Func::Sqrt)
            return num(0.5) * log_derivative(f.lhs());
        break;
    default: break;
    }
    return f.derivative() / f;
}

std::optional<Expr> recognize_polynomial(const Expr& e, const ParamMap& params, int max_degree)
{
    constexpr int N = 32;
    constexpr double r = 0.5;
    std::vector<cplx> f(N);
    double scale = 0;
    try {
        for (int j = 0; j < N; ++j) {
            f[j] = e.eval(std::polar(r, 2 * std::numbers::pi * j / N), params);
            scale = std::max(scale, std::abs(f[j]));
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    scale = std::max(scale, 1.0);
    Poly c(N);
    for (int k = 0; k < N; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < N; ++j)
            s += f[j] * std::polar(1.0, -2 * std::numbers::pi * j * k / N);
        c[k] = s / double(N) / std::pow(r, k);
    }
    for (int k = max_degree + 1; k < N; ++k)
        if (std::abs(c[k]) * std::pow(r, k) > 1e-12 * scale)
            return std::nullopt;
    c.resize(max_degree + 1);
    for (auto& x : c) {
        const double m = std::max(1.0, std::abs(x));
        x = cplx(snap(x.real(), m), snap(x.imag(), m));
        if (std::abs(x.real()) < 1e-13 * scale)
            x.real(0.0);
        if (std::abs(x.imag()) < 1e-13 * scale)
            x.imag(0.0);
    }
    while (c.size() > 1 && c.back() == 0.0)
        c.pop_back();
    auto poly = [&](cplx z) {
        cplx v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            v = v * z + *it;
        return v;
    };
    try {
        for (int j = 0; j < 9; ++j) {
            const cplx z = j == 0 ? cplx(0.0) : std::polar(1.2, 0.7 * j + 0.3);
            const cplx v = e.eval(z, params);
            if (std::abs(v - poly(z)) > 1e-10 * std::max(1.0, std::abs(v)))
                return std::nullopt;
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    return polynomial_expr(c);
}

OdeSpec ode_coefficients(const WeierstrassData& data)
{
    OdeSpec s;
    s.lambda = data.lambda();
    s.params = data.params();
    s.p = simplified(num(-2.0) * log_derivative(data.eta()), s.params);
    s.q = simplified(-(num(data.lambda()) * pow(data.eta(), num(2.0)) * data.psi_prime()), s.params);
    return s;
}

Expr standard_potential(const WeierstrassData& data)
{
    const Expr L = log_derivative(data.eta());
    const Expr q = num(data.lambda()) * pow(data.eta(), num(2.0)) * data.psi_prime();
    return simplified(L.derivative() - pow(L, num(2.0)) - q, data.params());
}

WeierstrassData weierstrass_from_ode(const OdeSpec& spec, cplx c, cplx c1, cplx z0)
{
    if (spec.lambda == 0.0)
        throw Error(ErrorKind::LambdaZero, "lambda must be nonzero");
    if (c == 0.0)
        throw Error(ErrorKind::InvalidArgument, "c must be nonzero");
    try {
        spec.p.eval(z0, spec.params);
        spec.q.eval(z0, spec.params);
    } catch (const Error& e) {
        throw Error(ErrorKind::NonIntegrableForm, std::string("coefficients not finite at the base point: ") + e.what());
    }
    const double lam = spec.lambda;
    const auto pc = as_polynomial(spec.p, spec.params);
    const auto qc = as_polynomial(spec.q, spec.params);

    // P = antiderivative of p with zero constant term
    std::optional<Poly> P;
    if (pc) {
        P = Poly(pc->size() + 1, 0.0);
        for (std::size_t k = 0; k < pc->size(); ++k)
            (*P)[k + 1] = (*pc)[k] / double(k + 1);
    }

    Expr eta;
    if (P) {
        Poly half(P->size());
        for (std::size_t k = 0; k < P->size(); ++k)
            half[k] = -0.5 * (*P)[k];
        eta = num(c) * exp(polynomial_expr(half));
    } else {
        eta = num(c) * exp(num(-0.5) * Expr::integral(spec.p, num(z0)));
    }

    std::optional<Expr> antider;  // of q / eta^2 * c^2
    if (P && qc && P->size() <= 3) {
        const cplx a1 = P->size() > 1 ? (*P)[1] : 0.0, a2 = P->size() > 2 ? (*P)[2] : 0.0;
        const Expr z = Expr::variable();
        if (a1 == 0.0 && a2 == 0.0) {
            Poly Iq(qc->size() + 1, 0.0);
            for (std::size_t k = 0; k < qc->size(); ++k)
                Iq[k + 1] = (*qc)[k] / double(k + 1);
            antider = polynomial_expr(Iq);
        } else if (qc->size() == 1) {
            const cplx q0 = (*qc)[0];
            if (a2 == 0.0) {
                antider = num(q0 / a1) * exp(num(a1) * z);
            } else {
                const cplx s = std::sqrt(-a2), k = a1 / (2.0 * a2);
                const cplx K = std::exp(-a1 * a1 / (4.0 * a2)) * std::sqrt(std::numbers::pi) / (2.0 * s);
                antider = num(q0 * K) * erf(num(s) * (z + num(k)));
            }
        }
    }

    Expr psi;
    if (antider)
        psi = num(-1.0 / (lam * c * c)) * *antider - num(c1);
    else
        psi = num(-1.0 / lam) * Expr::integral(spec.q / pow(eta, num(2.0)), num(z0)) - num(c1);
    return WeierstrassData(eta, psi, lam, z0, spec.params);
}

WeierstrassData erf_example_data(int n, cplx c, cplx c1, double lambda)
{
    if (lambda == 0.0)
        throw Error(ErrorKind::LambdaZero, "lambda must be nonzero");
    const Expr z = Expr::variable();
    const Expr eta = num(c) * exp(pow(z, num(2.0)) / num(2.0));
    const Expr psi = num(double(n) * std::sqrt(std::numbers::pi) / (lambda * c * c)) * erf(z) - num(c1);
    return WeierstrassData(eta, psi, lambda, 1.0);
}

ErfExample erf_example_surface(int n, cplx c, cplx c1, double lambda, const Rect& domain, const SampleOptions& options)
{
    ErfExample ex{erf_example_data(n, c, c1, lambda), {}, 0.0};
    ex.patch = sample_surface(ex.data, domain, Target::H3, options);
    for (std::size_t k = 0; k < ex.patch.z.size(); ++k) {
        try {
            const auto v = ex.data.values(ex.patch.z[k]);
            ex.constancy = std::max(ex.constancy, std::abs(lambda * v.eta * v.eta * v.psi_z - 2.0 * n));
        } catch (const Error&) {
        }
    }
    return ex;
}

BridgeResiduals bridge_residuals(const WeierstrassData& data, cplx z, double h, double tol)
{
    const OdeSpec ode = ode_coefficients(data);
    const Expr Q = standard_potential(data);
    const ParamMap& prm = data.params();

    std::array<Mat2C, 5> psi;
    Wavefunction w = integrate_reduced(data, PathSpec::straight(data.z0(), z - 2.0 * h), {tol});
    psi[0] = w.value;
    for (int k = 1; k < 5; ++k) {
        w = continue_reduced(data, w, {z + double(k - 2) * h}, {tol});
        psi[k] = w.value;
    }
    std::array<cplx, 5> eta;
    for (int k = 0; k < 5; ++k)
        eta[k] = data.values(z + double(k - 2) * h).eta;
    const auto v = data.values(z);
    const cplx p = ode.p.eval(z, prm), q = ode.q.eval(z, prm), Qz = Q.eval(z, prm);
    auto d1 = [h](const std::array<cplx, 5>& f) { return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h); };
    auto d2 = [h](const std::array<cplx, 5>& f) {
        return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
    };
    auto rel = [](cplx r, std::initializer_list<cplx> terms) {
        double m = 1e-300;
        for (cplx t : terms)
            m = std::max(m, std::abs(t));
        return std::abs(r) / m;
    };

    BridgeResiduals out;
    for (int col = 0; col < 2; ++col) {
        std::array<cplx, 5> a, y;
        for (int k = 0; k < 5; ++k) {
            a[k] = col == 0 ? psi[k].a11 : psi[k].a12;
            y[k] = a[k] / eta[k];
        }
        const cplx beta = col == 0 ? psi[2].a21 : psi[2].a22;
        const cplx a1 = d1(a), a2 = d2(a);
        out.ode = std::max(out.ode, rel(a2 + p * a1 + q * a[2], {a2, p * a1, q * a[2]}));
        const cplx elim = v.psi * a[2] - a1 / (data.lambda() * v.eta * v.eta);
        out.elimination = std::max(out.elimination, rel(beta - elim, {beta, v.psi * a[2], elim}));
        const cplx y2 = d2(y);
        out.standard = std::max(out.standard, rel(y2 + Qz * y[2], {y2, Qz * y[2]}));
    }
    return out;
}

bool KummerReport::all_pass() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

namespace {

struct Column {
    cplx alpha, beta;
};

// Columns exactly as printed for the error-function example.
class PrintedColumns {
public:
    PrintedColumns(int n, cplx c, cplx c1, double lambda) : n_(n), c_(c), c1_(c1), lambda_(lambda)
    {
        const double nn = n;
        const cplx H1 = hermite_h(-n - 1, 1.0), H2 = hermite_h(-n - 2, 1.0);
        const cplx K1 = kummer_1f1((1 + nn) / 2, 0.5, 1.0), K3 = kummer_1f1((1 + nn) / 2, 1.5, 1.0);
        sigma_ = 1.0 + lambda * std::numbers::e / (2.0 * ((1 + nn) * H2 + H1) * K1 + 2.0 * nn * H1 * K3);
    }

    cplx sigma() const { return sigma_; }

    Column at(int which, cplx z) const
    {
        const double nn = n_;
        const cplx s = which == 0 ? sigma_ : cplx(1.0);
        const cplx H1 = hermite_h(-n_ - 1, z), H2 = hermite_h(-n_ - 2, z);
        const cplx z2 = z * z;
        const cplx K1 = kummer_1f1((1 + nn) / 2, 0.5, z2), K3 = kummer_1f1((1 + nn) / 2, 1.5, z2);
        const cplx em = std::exp(-z2), ep = std::exp(z2);
        const cplx lc2 = lambda_ * c_ * c_;
        Column col;
        col.alpha = em * (H1 + s * K1);
        col.beta = (1.0 / lc2) * em * (lc2 * c1_ + nn * std::sqrt(std::numbers::pi) * erf_c(z)) * (H1 + s * K1) +
                   2.0 * ep * ((1 + nn) * H2 + z * H1 - nn * z * s * K3);
        return col;
    }

private:
    int n_;
    cplx c_, c1_;
    double lambda_;
    cplx sigma_;
};

template <class F>
double system_residual(const WeierstrassData& data, const F& column, cplx z)
{
    constexpr double h = 1e-5;
    const Column cp = column(z + h), cm = column(z - h), c0 = column(z);
    const cplx da = (cp.alpha - cm.alpha) / (2 * h), db = (cp.beta - cm.beta) / (2 * h);
    const Mat2C A = reduced_coefficient(data, z);
    const cplx ra = A.a11 * c0.alpha + A.a12 * c0.beta, rb = A.a21 * c0.alpha + A.a22 * c0.beta;
    const double scale = std::max({std::abs(da), std::abs(db), std::abs(ra), std::abs(rb), 1e-300});
    return std::max(std::abs(da - ra), std::abs(db - rb)) / scale;
}

CrossCheck make(std::string name, double value, double threshold, bool below, std::string note)
{
    CrossCheck c{std::move(name), value, threshold, below ? value < threshold : value > threshold, below,
                 std::move(note)};
    return c;
}

}  // namespace

KummerReport kummer_crosscheck(int n, cplx c, cplx c1, double lambda, cplx z)
{
    const WeierstrassData data = erf_example_data(n, c, c1, lambda);
    const PrintedColumns printed(n, c, c1, lambda);
    KummerReport rep;
    rep.sigma = printed.sigma();

    const std::vector<cplx> probes = {z, 1.0, cplx(1.25, 0.1)};
    for (int j = 0; j < 2; ++j) {
        double worst = 0;
        for (cplx p : probes)
            worst = std::max(worst, system_residual(data, [&](cplx w) { return printed.at(j, w); }, p));
        rep.checks.push_back(make("printed_column" + std::to_string(j + 1) + "_system", worst, 1e-4, true,
                                  "relative residual of the linear system for the printed column"));
    }

    {
        const Column a = printed.at(0, 1.5), b = printed.at(1, 1.5);
        const cplx w1 = a.alpha * b.beta, w2 = b.alpha * a.beta;
        const double indep = std::abs(w1 - w2) / std::max(std::abs(w1) + std::abs(w2), 1e-300);
        rep.checks.push_back(make("printed_wronskian_z1.5", indep, 1e-3, false,
                                  "normalized determinant of the printed columns at z = 1.5"));
    }

    {
        const Mat2C psi = integrate_reduced(data, PathSpec::straight(1.0, z), {1e-12}).value;
        for (int j = 0; j < 2; ++j) {
            const Column c0 = printed.at(j, 1.0), cz = printed.at(j, z);
            const cplx ia = psi.a11 * c0.alpha + psi.a12 * c0.beta, ib = psi.a21 * c0.alpha + psi.a22 * c0.beta;
            const double dev = std::max(std::abs(ia - cz.alpha), std::abs(ib - cz.beta)) /
                               std::max({std::abs(cz.alpha), std::abs(cz.beta), 1e-300});
            rep.checks.push_back(make("printed_vs_integrated_column" + std::to_string(j + 1), dev, 1e-2, true,
                                      "closed form against the integrated solution with the same data at z0 = 1"));
        }
    }

    {
        const Column a = printed.at(0, 1.0), b = printed.at(1, 1.0);
        rep.printed_at_base = {a.alpha, b.alpha, a.beta, b.beta};
        const cplx d = 0.5 * (a.alpha + b.beta);
        const double defect = (rep.printed_at_base - d * Mat2C::identity()).max_norm() / std::max(std::abs(d), 1e-300);
        rep.checks.push_back(make("printed_base_normalization", defect, 1e-2, true,
                                  "distance of the printed matrix at z0 = 1 from a multiple of the identity"));
    }

    // Columns built from H_{-n} and 1F1(n/2, 1/2, z^2), beta by elimination.
    const double nn = n;
    auto from_alpha = [&](auto alpha, auto dalpha) {
        return [&data, alpha, dalpha](cplx w) {
            const auto v = data.values(w);
            Column col;
            col.alpha = alpha(w);
            col.beta = v.psi * col.alpha - dalpha(w) / (data.lambda() * v.eta * v.eta);
            return col;
        };
    };
    const auto hermite_col = from_alpha([n](cplx w) { return hermite_h(-n, w); },
                                        [n](cplx w) { return -2.0 * n * hermite_h(-n - 1, w); });
    const auto kummer_col = from_alpha([nn](cplx w) { return kummer_1f1(nn / 2, 0.5, w * w); },
                                       [nn](cplx w) { return 2.0 * w * nn * kummer_1f1(nn / 2 + 1, 1.5, w * w); });
    double h_worst = 0, k_worst = 0;
    for (cplx p : probes) {
        h_worst = std::max(h_worst, system_residual(data, hermite_col, p));
        k_worst = std::max(k_worst, system_residual(data, kummer_col, p));
    }
    rep.checks.push_back(make("hermite_column_system", h_worst, 1e-4, true,
                              "alpha = H_{-n}(z) with beta from the elimination identity"));
    rep.checks.push_back(make("kummer_column_system", k_worst, 1e-4, true,
                              "alpha = 1F1(n/2, 1/2, z^2) with beta from the elimination identity"));
    return rep;
}

}  // namespace solsurf
