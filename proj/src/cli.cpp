#include "solsurf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "solsurf/error.hpp"
#include "solsurf/mesh_io.hpp"
#include "solsurf/odebridge.hpp"
#include "solsurf/verify.hpp"

namespace solsurf::cli {

std::string to_string(Command c)
{
    switch (c) {
    case Command::Generate: return "generate";
    case Command::Verify: return "verify";
    case Command::Limit: return "limit";
    case Command::ToOde: return "ode to-ode";
    case Command::FromOde: return "ode from-ode";
    case Command::ErfExample: return "ode erf-example";
    }
    return "?";
}

cplx RunConfig::base_point() const
{
    if (z0)
        return *z0;
    return cplx(0.5 * (domain.re_min + domain.re_max), 0.5 * (domain.im_min + domain.im_max));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        parts.push_back(cur);
    if (!s.empty() && s.back() == sep)
        parts.emplace_back();
    return parts;
}

double to_double(const std::string& s, const std::string& what)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
        throw UsageError("invalid number '" + s + "' in " + what);
    return v;
}

int to_int(const std::string& s, const std::string& what)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw UsageError("invalid integer '" + s + "' in " + what);
    return v;
}

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << v;
    return os.str();
}

Json echo(const RunConfig& cfg)
{
    Json e;
    e["command"] = to_string(cfg.command);
    e["eta"] = cfg.eta;
    e["psi"] = cfg.psi;
    Json params = Json::object();
    for (const auto& [k, v] : cfg.params)
        params[k] = cjson(v);
    e["params"] = params;
    e["lambda"] = cfg.lambdas;
    e["domain"] = {cfg.domain.re_min, cfg.domain.re_max, cfg.domain.im_min, cfg.domain.im_max};
    e["res"] = {cfg.nx, cfg.ny};
    e["tol"] = cfg.tol;
    e["target"] = solsurf::to_string(cfg.target);
    e["z0"] = cjson(cfg.base_point());
    e["out"] = cfg.out;
    e["report"] = cfg.report;
    e["points"] = cfg.points;
    e["p"] = cfg.p;
    e["q"] = cfg.q;
    e["n"] = cfg.n;
    e["c"] = cjson(cfg.c);
    e["c1"] = cjson(cfg.c1);
    e["perturb_q"] = cjson(cfg.perturb_q);
    return e;
}

Json checks_json(const CheckSet& set)
{
    Json j = Json::object();
    for (const auto& c : set.items())
        j[c.name] = {{"max", c.max}, {"mean", c.mean}, {"threshold", c.threshold}, {"pass", c.pass},
                     {"samples", c.samples}};
    return j;
}

std::string checks_text(const CheckSet& set)
{
    std::ostringstream os;
    for (const auto& c : set.items())
        os << (c.pass ? "PASS " : "FAIL ") << c.name << " max=" << fmt(c.max) << " threshold=" << fmt(c.threshold)
           << '\n';
    return os.str();
}

Json grid_json(const SurfacePatch& p)
{
    return {{"nx", p.nx}, {"ny", p.ny}, {"valid", p.valid_count()}};
}

Json masked_json(const SurfacePatch& p)
{
    Json m = Json::array();
    for (std::size_t k = 0; k < p.records.size(); ++k)
        if (!p.records[k].valid)
            m.push_back({{"z", cjson(p.z[k])}, {"reason", p.records[k].failure}});
    return m;
}

Outcome finish(const RunConfig& cfg, Json grid, const CheckSet& checks, Json details, std::string text = {})
{
    Outcome o;
    o.report["command"] = to_string(cfg.command);
    o.report["config_echo"] = echo(cfg);
    o.report["grid"] = std::move(grid);
    o.report["checks"] = checks_json(checks);
    o.report["pass"] = checks.all_pass();
    o.report["wall_ms"] = 0.0;
    o.report["details"] = std::move(details);
    o.pass = checks.all_pass();
    o.text = std::move(text) + checks_text(checks);
    return o;
}

WeierstrassData make_data(const RunConfig& cfg, double lambda)
{
    return WeierstrassData(Expr::parse(cfg.eta), Expr::parse(cfg.psi), lambda, cfg.base_point(), cfg.params);
}

SampleOptions sample_options(const RunConfig& cfg)
{
    SampleOptions so;
    so.nx = cfg.nx;
    so.ny = cfg.ny;
    so.tol = cfg.tol;
    return so;
}

std::vector<cplx> limit_points(const Rect& r, int n)
{
    const cplx c(0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max));
    const double hw = 0.5 * (r.re_max - r.re_min), hh = 0.5 * (r.im_max - r.im_min);
    std::vector<cplx> pts;
    for (int k = 0; k < n; ++k) {
        const double rad = 0.8 * std::sqrt((k + 0.5) / n);
        const double ang = 2.0 * std::numbers::pi * std::numbers::phi * k;
        pts.push_back(c + cplx(hw * rad * std::cos(ang), hh * rad * std::sin(ang)));
    }
    return pts;
}

double fit_order(const std::vector<double>& lambdas, const std::vector<double>& errors)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const double x = std::log(std::abs(lambdas[k])), y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Rect parse_domain(const std::string& s)
{
    const auto parts = split(s, ':');
    if (parts.size() != 4)
        throw UsageError("--domain expects a:b:c:d, got '" + s + "'");
    Rect r{to_double(parts[0], "--domain"), to_double(parts[1], "--domain"), to_double(parts[2], "--domain"),
           to_double(parts[3], "--domain")};
    if (!(r.re_min < r.re_max) || !(r.im_min < r.im_max))
        throw UsageError("--domain needs a < b and c < d, got '" + s + "'");
    return r;
}

std::pair<int, int> parse_resolution(const std::string& s)
{
    const auto x = s.find_first_of("xX");
    if (x == std::string::npos) {
        const int n = to_int(s, "--res");
        return {n, n};
    }
    return {to_int(s.substr(0, x), "--res"), to_int(s.substr(x + 1), "--res")};
}

cplx parse_constant(const std::string& s)
{
    const Expr e = Expr::parse(s);
    return e.eval(0.0);
}

std::pair<std::string, cplx> parse_binding(const std::string& s)
{
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw UsageError("--param expects name=value, got '" + s + "'");
    return {s.substr(0, eq), parse_constant(s.substr(eq + 1))};
}

void validate(const RunConfig& cfg)
{
    const std::string cmd = to_string(cfg.command);
    if (cfg.nx < 2 || cfg.ny < 2)
        throw UsageError("--res must be at least 2 per axis");
    if (!(cfg.tol > 0.0 && cfg.tol <= 1e-2))
        throw UsageError("--tol must lie in (0, 1e-2]");
    if (!(cfg.domain.re_min < cfg.domain.re_max) || !(cfg.domain.im_min < cfg.domain.im_max))
        throw UsageError("--domain is empty");
    if (cfg.lambdas.empty())
        throw UsageError(cmd + ": --lambda needs a value");

    switch (cfg.command) {
    case Command::Generate:
    case Command::Verify:
    case Command::Limit:
    case Command::ToOde:
        if (cfg.psi.empty())
            throw UsageError(cmd + ": missing required flag --psi");
        break;
    case Command::FromOde:
        if (cfg.p.empty())
            throw UsageError(cmd + ": missing required flag --p");
        if (cfg.q.empty())
            throw UsageError(cmd + ": missing required flag --q");
        break;
    case Command::ErfExample: break;
    }

    if (cfg.command == Command::Limit) {
        if (cfg.lambdas.size() < 3)
            throw UsageError("limit: --lambda needs at least 3 values, e.g. --lambda 1e-1,1e-2,1e-3");
        for (std::size_t k = 0; k < cfg.lambdas.size(); ++k) {
            if (!(cfg.lambdas[k] > 0.0))
                throw UsageError("limit: --lambda values must be positive");
            if (k > 0 && !(cfg.lambdas[k] < cfg.lambdas[k - 1]))
                throw UsageError("limit: --lambda values must be strictly decreasing");
        }
        if (cfg.points < 1)
            throw UsageError("limit: --points must be positive");
        return;
    }
    if (cfg.lambdas.size() != 1)
        throw UsageError(cmd + ": --lambda takes a single value");
    const bool needs_lambda = cfg.command != Command::Generate || cfg.target != Target::E3Direct;
    if (needs_lambda && cfg.lambda() == 0.0)
        throw UsageError(cmd + ": --lambda must be nonzero");
}

Outcome cmd_generate(const RunConfig& cfg)
{
    const WeierstrassData data = make_data(cfg, cfg.lambda());
    const SurfacePatch patch = sample_surface(data, cfg.domain, cfg.target, sample_options(cfg));
    CheckSet checks;
    patch_checks(data, patch, checks);
    if (!cfg.out.empty())
        write_mesh(patch, cfg.out);
    Json details;
    details["masked"] = masked_json(patch);
    return finish(cfg, grid_json(patch), checks, std::move(details));
}

Outcome cmd_verify(const RunConfig& cfg)
{
    const WeierstrassData data = make_data(cfg, cfg.lambda());
    const SurfacePatch patch = sample_surface(data, cfg.domain, cfg.target, sample_options(cfg));
    CheckSet checks;
    SurfaceFields fields = weierstrass_fields(data);
    if (cfg.perturb_q != 0.0) {
        auto Q = fields.Q;
        const cplx amp = cfg.perturb_q;
        fields.Q = [Q, amp](cplx z) { return Q(z) + amp * std::conj(z); };
    }
    field_checks(fields, patch, checks);
    gauge_checks(data, gauge_path_ends(cfg.domain), checks);
    patch_checks(data, patch, checks);
    const LoopPeriod lp = loop_check(data, boundary_loop(cfg.domain), checks);
    if (!cfg.out.empty())
        write_mesh(patch, cfg.out);

    Json details;
    details["masked"] = masked_json(patch);
    details["loop"] = {{"real_period", lp.real_period}, {"monodromy", lp.monodromy}};
    Json ends = Json::array();
    for (cplx e : gauge_path_ends(cfg.domain))
        ends.push_back(cjson(e));
    details["gauge_path_ends"] = ends;
    return finish(cfg, grid_json(patch), checks, std::move(details));
}

Outcome cmd_limit(const RunConfig& cfg)
{
    const WeierstrassData base = make_data(cfg, cfg.lambdas.front());
    const auto pts = limit_points(cfg.domain, cfg.points);

    std::vector<LorentzVec> target;
    Json samples = Json::array();
    for (cplx z : pts) {
        const Vec3 f = enneper_weierstrass(base, PathSpec::straight(base.z0(), z), std::min(cfg.tol, 1e-12));
        const Vec3 l = limit_from_enneper(f);
        target.push_back(LorentzVec{0.0, l[0], l[1], l[2]});
        samples.push_back({{"z", cjson(z)}, {"target", l}});
    }

    std::vector<double> worst;
    Json table = Json::array();
    for (double lambda : cfg.lambdas) {
        const WeierstrassData data = base.with_lambda(lambda);
        IntegrateOptions opt;
        opt.tol = cfg.tol * std::min(1.0, lambda);  // shifted form divides by lambda
        std::vector<double> err;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Wavefunction w = integrate_reduced(data, PathSpec::straight(base.z0(), pts[k]), opt);
            const LorentzVec d = shifted_immersion(w, lambda) - target[k];
            err.push_back(std::sqrt(d.x0 * d.x0 + d.x1 * d.x1 + d.x2 * d.x2 + d.x3 * d.x3));
        }
        const Check c = make_check("", 0.0, err);
        worst.push_back(c.max);
        table.push_back({{"lambda", lambda}, {"max_error", c.max}, {"mean_error", c.mean}});
    }

    const double order = fit_order(cfg.lambdas, worst);
    CheckSet checks;
    checks.add("limit-order-deficit", 0.1, {1.0 - order});
    checks.add("limit-error", 1e-2, {worst.back()});

    Json details;
    details["fitted_order"] = order;
    details["table"] = table;
    details["samples"] = samples;
    details["target_convention"] = "(X1, X2, X3) = (-2 F1, -2 F2, 2 F3)";
    std::ostringstream text;
    for (std::size_t k = 0; k < cfg.lambdas.size(); ++k)
        text << "lambda=" << fmt(cfg.lambdas[k]) << " max_error=" << fmt(worst[k]) << '\n';
    text << "fitted order " << std::setprecision(4) << order << '\n';
    return finish(cfg, nullptr, checks, std::move(details), text.str());
}

Outcome cmd_to_ode(const RunConfig& cfg)
{
    const WeierstrassData data = make_data(cfg, cfg.lambda());
    const OdeSpec spec = ode_coefficients(data);
    const Expr Q = standard_potential(data);
    Json details;
    details["p"] = spec.p.to_string();
    details["q"] = spec.q.to_string();
    details["Q"] = Q.to_string();
    std::string text = "p = " + spec.p.to_string() + "\nq = " + spec.q.to_string() + "\nQ = " + Q.to_string() + "\n";
    return finish(cfg, nullptr, CheckSet{}, std::move(details), std::move(text));
}

Outcome cmd_from_ode(const RunConfig& cfg)
{
    OdeSpec spec{Expr::parse(cfg.p), Expr::parse(cfg.q), cfg.lambda(), cfg.params};
    const WeierstrassData data = weierstrass_from_ode(spec, cfg.c, cfg.c1, cfg.base_point());
    const OdeSpec back = ode_coefficients(data);

    std::vector<double> dp, dq;
    for (int k = 0; k < 5; ++k) {
        const cplx z = data.z0() + std::polar(0.3, 2.0 * std::numbers::pi * k / 5.0);
        const cplx p = spec.p.eval(z, cfg.params), q = spec.q.eval(z, cfg.params);
        dp.push_back(std::abs(back.p.eval(z, cfg.params) - p) / (1.0 + std::abs(p)));
        dq.push_back(std::abs(back.q.eval(z, cfg.params) - q) / (1.0 + std::abs(q)));
    }
    CheckSet checks;
    checks.add("roundtrip-p", 1e-8, dp);
    checks.add("roundtrip-q", 1e-8, dq);

    Json details;
    details["eta"] = data.eta().to_string();
    details["psi"] = data.psi().to_string();
    details["lambda"] = data.lambda();
    details["z0"] = cjson(data.z0());
    std::string text = "eta = " + data.eta().to_string() + "\npsi = " + data.psi().to_string() + "\n";
    return finish(cfg, nullptr, checks, std::move(details), std::move(text));
}

Outcome cmd_erf_example(const RunConfig& cfg)
{
    const ErfExample ex = erf_example_surface(cfg.n, cfg.c, cfg.c1, cfg.lambda(), cfg.domain, sample_options(cfg));
    const OdeSpec spec = ode_coefficients(ex.data);
    const bool exact = spec.p.structurally_equal(Expr::parse("-2*z")) &&
                       spec.q.structurally_equal(Expr::number(-2.0 * cfg.n));

    CheckSet checks;
    checks.add("constancy", 1e-10, {ex.constancy});
    checks.add("ode-coefficients", 0.5, {exact ? 0.0 : 1.0});
    patch_checks(ex.data, ex.patch, checks);
    if (!cfg.out.empty())
        write_mesh(ex.patch, cfg.out);

    const Rect& r = cfg.domain;
    const cplx zk(r.re_min + 0.75 * (r.re_max - r.re_min), r.im_min + 0.75 * (r.im_max - r.im_min));
    Json kummer;
    try {
        const KummerReport k = kummer_crosscheck(cfg.n, cfg.c, cfg.c1, cfg.lambda(), zk);
        Json list = Json::array();
        for (const auto& c : k.checks)
            list.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass},
                            {"note", c.note}});
        kummer = {{"z", cjson(zk)}, {"sigma", cjson(k.sigma)}, {"all_pass", k.all_pass()}, {"checks", list}};
    } catch (const Error& e) {
        kummer = {{"z", cjson(zk)}, {"error", e.what()}};
    }

    Json details;
    details["eta"] = ex.data.eta().to_string();
    details["psi"] = ex.data.psi().to_string();
    details["p"] = spec.p.to_string();
    details["q"] = spec.q.to_string();
    details["Q"] = standard_potential(ex.data).to_string();
    details["kummer_crosscheck"] = kummer;
    details["masked"] = masked_json(ex.patch);

    std::string text = "p = " + spec.p.to_string() + "\nq = " + spec.q.to_string() + "\n";
    if (kummer.contains("all_pass"))
        text += std::string("kummer cross-check: ") + (kummer["all_pass"].get<bool>() ? "all pass" : "mismatches recorded") +
                " (informational)\n";
    return finish(cfg, grid_json(ex.patch), checks, std::move(details), std::move(text));
}

Outcome dispatch(const RunConfig& cfg)
{
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    switch (cfg.command) {
    case Command::Generate: o = cmd_generate(cfg); break;
    case Command::Verify: o = cmd_verify(cfg); break;
    case Command::Limit: o = cmd_limit(cfg); break;
    case Command::ToOde: o = cmd_to_ode(cfg); break;
    case Command::FromOde: o = cmd_from_ode(cfg); break;
    case Command::ErfExample: o = cmd_erf_example(cfg); break;
    }
    o.report["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

Json strip_timing(Json report)
{
    report.erase("wall_ms");
    return report;
}

namespace {

struct RawOptions {
    std::string eta = "1", psi, domain, res, target = "h3", z0, out, report, p, q, c = "1", c1 = "0", perturb_q;
    std::vector<std::string> params;
    std::vector<double> lambdas;
    double tol = 1e-8;
    int n = 1, points = 10;
};

RunConfig resolve(Command cmd, const RawOptions& raw)
{
    RunConfig cfg;
    cfg.command = cmd;
    cfg.eta = raw.eta;
    cfg.psi = raw.psi;
    for (const auto& b : raw.params) {
        auto [name, value] = parse_binding(b);
        cfg.params[name] = value;
    }
    if (!raw.lambdas.empty())
        cfg.lambdas = raw.lambdas;
    if (!raw.domain.empty())
        cfg.domain = parse_domain(raw.domain);
    if (!raw.res.empty())
        std::tie(cfg.nx, cfg.ny) = parse_resolution(raw.res);
    cfg.tol = raw.tol;
    try {
        cfg.target = target_from_string(raw.target);
    } catch (const Error&) {
        throw UsageError("--target must be h3, e3-limit or e3-direct, got '" + raw.target + "'");
    }
    if (!raw.z0.empty())
        cfg.z0 = parse_constant(raw.z0);
    cfg.out = raw.out;
    cfg.report = raw.report;
    cfg.points = raw.points;
    cfg.p = raw.p;
    cfg.q = raw.q;
    cfg.n = raw.n;
    cfg.c = parse_constant(raw.c);
    cfg.c1 = parse_constant(raw.c1);
    if (!raw.perturb_q.empty())
        cfg.perturb_q = parse_constant(raw.perturb_q);
    return cfg;
}

bool is_usage_kind(ErrorKind k)
{
    switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownFunction:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::UnboundParameter:
    case ErrorKind::InvalidArgument: return true;
    default: return false;
    }
}

void write_report(const Json& report, const std::filesystem::path& path)
{
    std::ofstream os(path);
    if (!os)
        throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string() + " for writing");
    os << report.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Constant mean curvature and minimal surfaces from Weierstrass data", "solsurf"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.require_subcommand(1);

    RawOptions raw;
    app.add_option("--eta", raw.eta, "eta(z) expression")->capture_default_str();
    app.add_option("--psi", raw.psi, "psi(z) expression");
    app.add_option("--param", raw.params, "parameter binding name=value (repeatable)");
    app.add_option("--lambda", raw.lambdas, "spectral parameter; limit takes a decreasing list")->delimiter(',');
    app.add_option("--domain", raw.domain, "rectangle re_min:re_max:im_min:im_max (default -1:1:-1:1)");
    app.add_option("--res", raw.res, "grid resolution N or NxM (default 32)");
    app.add_option("--tol", raw.tol, "integration tolerance")->capture_default_str();
    app.add_option("--target", raw.target, "h3, e3-limit or e3-direct")->capture_default_str();
    app.add_option("--z0", raw.z0, "base point (default: domain centre)");
    app.add_option("--out", raw.out, "mesh output (.obj or .ply)");
    app.add_option("--report", raw.report, "JSON report path");
    app.add_option("--points", raw.points, "limit: number of sample points")->capture_default_str();
    app.add_option("--p", raw.p, "from-ode: coefficient of w'");
    app.add_option("--q", raw.q, "from-ode: coefficient of w");
    app.add_option("--n", raw.n, "erf-example: integer n")->capture_default_str();
    app.add_option("--c", raw.c, "integration constant c")->capture_default_str();
    app.add_option("--c1", raw.c1, "integration constant c1")->capture_default_str();
    app.add_option("--perturb-q", raw.perturb_q, "verify: add amp * conj(z) to Q");

    auto* gen = app.add_subcommand("generate", "sample a surface patch, write mesh and report")->fallthrough();
    auto* ver = app.add_subcommand("verify", "run the full residual battery")->fallthrough();
    auto* lim = app.add_subcommand("limit", "lambda -> 0 convergence study")->fallthrough();
    auto* ode = app.add_subcommand("ode", "ODE bridge")->fallthrough();
    ode->require_subcommand(1);
    auto* to = ode->add_subcommand("to-ode", "ODE coefficients of Weierstrass data")->fallthrough();
    auto* from = ode->add_subcommand("from-ode", "Weierstrass data from w'' + p w' + q w = 0")->fallthrough();
    auto* erf = ode->add_subcommand("erf-example", "error function example surface")->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    Command cmd = Command::Generate;
    if (*ver)
        cmd = Command::Verify;
    else if (*lim)
        cmd = Command::Limit;
    else if (*to)
        cmd = Command::ToOde;
    else if (*from)
        cmd = Command::FromOde;
    else if (*erf)
        cmd = Command::ErfExample;
    (void)gen;

    RunConfig cfg;
    Outcome o;
    try {
        cfg = resolve(cmd, raw);
        o = dispatch(cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n' << "run 'solsurf --help' for the list of flags\n";
        return 1;
    } catch (const Error& e) {
        err << (is_usage_kind(e.kind()) ? "usage error: " : "error: ") << solsurf::to_string(e.kind()) << ": "
            << e.what() << '\n';
        return 1;
    }

    try {
        std::string report_path = cfg.report;
        if (report_path.empty() && !cfg.out.empty())
            report_path = std::filesystem::path(cfg.out).replace_extension(".json").string();
        if (!report_path.empty())
            write_report(o.report, report_path);
        else if (cmd != Command::ToOde && cmd != Command::FromOde)
            out << o.report.dump(2) << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    out << o.text;
    return o.pass ? 0 : 2;
}

}  // namespace solsurf::cli
