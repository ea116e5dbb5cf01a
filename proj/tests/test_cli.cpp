#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "solsurf/cli.hpp"
#include "solsurf/mesh_io.hpp"
#include "solsurf/odebridge.hpp"
#include "solsurf/specfun.hpp"
#include "solsurf/verify.hpp"

using namespace solsurf;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run solsurf_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("solsurf_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

cli::Json load(const std::string& p)
{
    std::ifstream is(p);
    return cli::Json::parse(is);
}

std::string slurp(const std::string& p)
{
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int count_prefix(const std::string& text, const std::string& prefix)
{
    int n = 0;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
        n += line.rfind(prefix, 0) == 0;
    return n;
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("generate e3-direct Enneper writes 1024 vertices and passes")
    {
        const auto obj = path("enneper.obj");
        const Run r = solsurf_cli({"generate", "--psi", "z", "--eta", "1", "--target", "e3-direct", "--domain",
                                   "-1:1:-1:1", "--res", "32", "--out", obj});
        CHECK(r.code == 0);
        const std::string text = slurp(obj);
        CHECK(count_prefix(text, "v ") == 1024);
        CHECK(count_prefix(text, "f ") == 2 * 31 * 31);
        CHECK(count_prefix(text, "# x0") == 0);
        const auto rep = load(path("enneper.json"));
        CHECK(rep["command"] == "generate");
        CHECK(rep["pass"] == true);
        for (const auto& [name, c] : rep["checks"].items())
            CHECK_MESSAGE(c["pass"] == true, name);
    }

    TEST_CASE("generate h3 reports the hyperboloid residual")
    {
        const auto ply = path("h3.ply");
        const Run r = solsurf_cli({"generate", "--psi", "z", "--eta", "1", "--lambda", "0.5", "--target", "h3",
                                   "--res", "24", "--out", ply, "--report", path("h3.json")});
        CHECK(r.code == 0);
        const auto rep = load(path("h3.json"));
        REQUIRE(rep["checks"].contains("hyperboloid"));
        CHECK(rep["checks"]["hyperboloid"]["max"].get<double>() < 1e-6);
        const std::string text = slurp(ply);
        CHECK(text.find("element vertex 576") != std::string::npos);
        CHECK(text.find("property double x0") != std::string::npos);
    }

    TEST_CASE("h3 OBJ carries x0 comments")
    {
        const auto obj = path("h3.obj");
        CHECK(solsurf_cli({"generate", "--psi", "z", "--lambda", "1", "--res", "8", "--out", obj}).code == 0);
        const std::string text = slurp(obj);
        CHECK(count_prefix(text, "v ") == 64);
        CHECK(count_prefix(text, "# x0 ") == 64);
    }

    TEST_CASE("missing --psi is a usage error naming the flag")
    {
        const Run r = solsurf_cli({"generate", "--eta", "1"});
        CHECK(r.code == 1);
        CHECK(r.err.find("--psi") != std::string::npos);
    }

    TEST_CASE("usage errors")
    {
        CHECK(solsurf_cli({}).code == 1);
        CHECK(solsurf_cli({"frobnicate"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z", "--res", "1"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z", "--tol", "0.5"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z", "--domain", "1:-1:0:1"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z", "--lambda", "0"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z", "--target", "s3"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z+", "--res", "4"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z", "--res", "4", "--out", path("bad.stl")}).code == 1);
        CHECK(solsurf_cli({"ode", "from-ode", "--q", "-2"}).err.find("--p") != std::string::npos);
        CHECK(solsurf_cli({"--help"}).code == 0);
    }

    TEST_CASE("lambda zero is fine for e3-direct")
    {
        CHECK(solsurf_cli({"generate", "--psi", "z", "--lambda", "0", "--target", "e3-direct", "--res", "6",
                           "--report", path("l0.json")})
                  .code == 0);
    }

    TEST_CASE("resolution NxM")
    {
        CHECK(solsurf_cli({"generate", "--psi", "z", "--res", "12x7", "--report", path("nm.json")}).code == 0);
        const auto rep = load(path("nm.json"));
        CHECK(rep["grid"]["nx"] == 12);
        CHECK(rep["grid"]["ny"] == 7);
    }

    TEST_CASE("config file supplies flags and flags win")
    {
        const auto cfg = path("run.cfg");
        std::ofstream(cfg) << "psi=z\neta=1\nres=8\nlambda=0.5\n";
        CHECK(solsurf_cli({"generate", "--config", cfg, "--res", "10", "--report", path("cfg.json")}).code == 0);
        const auto rep = load(path("cfg.json"));
        CHECK(rep["config_echo"]["psi"] == "z");
        CHECK(rep["config_echo"]["lambda"][0] == 0.5);
        CHECK(rep["grid"]["nx"] == 10);
    }

    TEST_CASE("verify Enneper at lambda 0.5 passes everything")
    {
        const Run r = solsurf_cli({"verify", "--psi", "z", "--eta", "1", "--lambda", "0.5", "--report",
                                   path("verify.json")});
        CHECK(r.code == 0);
        const auto rep = load(path("verify.json"));
        for (const char* name : {"gmc", "zero-curvature", "gauge-equivalence", "gauge-unitarity", "gauge-invariants",
                                 "det-drift", "conformality", "h-estimate", "hyperboloid", "loop-period"}) {
            REQUIRE_MESSAGE(rep["checks"].contains(name), name);
            CHECK_MESSAGE(rep["checks"][name]["pass"] == true, name);
        }
        CHECK(rep["checks"].size() == 10);
    }

    TEST_CASE("perturbed Q fails GMC and zero curvature together")
    {
        const Run r = solsurf_cli({"verify", "--psi", "z", "--lambda", "0.5", "--perturb-q", "0.2-0.1*i", "--res",
                                   "12", "--report", path("perturbed.json")});
        CHECK(r.code == 2);
        const auto rep = load(path("perturbed.json"));
        CHECK(rep["checks"]["gmc"]["pass"] == false);
        CHECK(rep["checks"]["zero-curvature"]["pass"] == false);
        CHECK(rep["checks"]["hyperboloid"]["pass"] == true);
    }

    TEST_CASE("pass flag follows max < threshold")
    {
        const auto rep = load(path("perturbed.json"));
        for (const auto& [name, c] : rep["checks"].items())
            if (c["max"].is_number())
                CHECK_MESSAGE(c["pass"].get<bool>() == (c["max"].get<double>() < c["threshold"].get<double>()), name);
    }

    TEST_CASE("limit study fits order one")
    {
        const Run r = solsurf_cli({"limit", "--psi", "z", "--eta", "1", "--lambda", "1e-1,1e-2,1e-3", "--report",
                                   path("limit.json")});
        CHECK(r.code == 0);
        const auto rep = load(path("limit.json"));
        CHECK(rep["details"]["fitted_order"].get<double>() >= 0.9);
        CHECK(rep["details"]["table"].size() == 3);
        CHECK(rep["details"]["samples"].size() == 10);
        CHECK(rep["grid"].is_null());
        // target column in the (-2F1, -2F2, 2F3) convention
        const auto& s = rep["details"]["samples"][0];
        const cplx z(s["z"][0].get<double>(), s["z"][1].get<double>());
        const WeierstrassData d(Expr::parse("1"), Expr::parse("z"), 1.0);
        const Vec3 f = enneper_weierstrass(d, PathSpec::straight(0.0, z));
        CHECK(s["target"][0].get<double>() == doctest::Approx(-2 * f[0]).epsilon(1e-10));
        CHECK(s["target"][1].get<double>() == doctest::Approx(-2 * f[1]).epsilon(1e-10));
        CHECK(s["target"][2].get<double>() == doctest::Approx(2 * f[2]).epsilon(1e-10));
    }

    TEST_CASE("limit needs at least three decreasing lambdas")
    {
        CHECK(solsurf_cli({"limit", "--psi", "z", "--lambda", "0.1"}).code == 1);
        CHECK(solsurf_cli({"limit", "--psi", "z", "--lambda", "1e-3,1e-2,1e-1"}).code == 1);
        CHECK(solsurf_cli({"generate", "--psi", "z", "--lambda", "1,2"}).code == 1);
    }

    TEST_CASE("ode to-ode for Enneper data")
    {
        const Run r = solsurf_cli({"ode", "to-ode", "--psi", "z", "--eta", "1", "--lambda", "1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("p = 0\n") != std::string::npos);
        CHECK(r.out.find("q = (-1)\n") != std::string::npos);
        CHECK(r.out.find("Q = (-1)\n") != std::string::npos);
    }

    TEST_CASE("ode from-ode recovers the error function data")
    {
        const Run r = solsurf_cli({"ode", "from-ode", "--p", "-2*z", "--q", "-2", "--lambda", "1", "--report",
                                   path("from.json")});
        CHECK(r.code == 0);
        const auto rep = load(path("from.json"));
        const Expr eta = Expr::parse(rep["details"]["eta"].get<std::string>());
        const Expr psi = Expr::parse(rep["details"]["psi"].get<std::string>());
        CHECK(eta.structurally_equal(Expr::parse("exp(0.5*z^2)")));
        const cplx k1 = psi.eval(0.3) / erf_c(0.3), k2 = psi.eval(cplx(0.7, 0.4)) / erf_c(cplx(0.7, 0.4));
        CHECK(std::abs(k1 - k2) < 1e-12);
        CHECK(std::abs(k1) > 0.1);
    }

    TEST_CASE("ode erf-example writes mesh and report")
    {
        const auto obj = path("erf.obj");
        const Run r = solsurf_cli({"ode", "erf-example", "--n", "1", "--c", "1", "--c1", "0", "--lambda", "1",
                                   "--domain", "0.5:1.5:-0.5:0.5", "--res", "16", "--out", obj});
        CHECK(r.code == 0);
        CHECK(count_prefix(slurp(obj), "v ") == 256);
        const auto rep = load(path("erf.json"));
        CHECK(rep["checks"]["hyperboloid"]["pass"] == true);
        CHECK(rep["checks"]["constancy"]["max"].get<double>() < 1e-10);
        CHECK(rep["details"]["p"] == "(-2)*z");
        CHECK(rep["details"]["q"] == "(-2)");
        REQUIRE(rep["details"]["kummer_crosscheck"].contains("checks"));
        CHECK(rep["details"]["kummer_crosscheck"]["checks"].size() == 8);
    }

    TEST_CASE("reports are deterministic across thread counts")
    {
        const std::vector<std::string> args = {"generate", "--psi", "z", "--lambda", "0.5", "--res", "20",
                                               "--report", path("det.json")};
        ::setenv("SOLSURF_THREADS", "1", 1);
        CHECK(solsurf_cli(args).code == 0);
        const auto a = cli::strip_timing(load(path("det.json")));
        ::setenv("SOLSURF_THREADS", "3", 1);
        CHECK(solsurf_cli(args).code == 0);
        const auto b = cli::strip_timing(load(path("det.json")));
        ::unsetenv("SOLSURF_THREADS");
        CHECK(a.dump() == b.dump());
    }

    TEST_CASE("masked samples drop their faces")
    {
        const auto obj = path("pole.obj");
        const Run r = solsurf_cli({"generate", "--psi", "1/z", "--eta", "z", "--lambda", "1", "--domain",
                                   "-1:1:-1:1", "--res", "9", "--z0", "0.5+0.5*i", "--out", obj});
        const auto rep = load(path("pole.json"));
        CHECK(rep["grid"]["valid"] == 80);
        CHECK(rep["details"]["masked"].size() == 1);
        const std::string text = slurp(obj);
        CHECK(count_prefix(text, "v ") == 80);
        CHECK(count_prefix(text, "f ") == 2 * 64 - 6);
        CHECK(r.code != 1);
    }
}

TEST_SUITE("cli parsing")
{
    TEST_CASE("domain and resolution")
    {
        const Rect d = cli::parse_domain("-1:2:-0.5:0.5");
        CHECK(d.re_min == -1);
        CHECK(d.re_max == 2);
        CHECK(d.im_min == -0.5);
        CHECK(d.im_max == 0.5);
        CHECK_THROWS_AS(cli::parse_domain("1:2:3"), cli::UsageError);
        CHECK_THROWS_AS(cli::parse_domain("a:2:3:4"), cli::UsageError);
        CHECK(cli::parse_resolution("16") == std::pair{16, 16});
        CHECK(cli::parse_resolution("16x8") == std::pair{16, 8});
        CHECK_THROWS_AS(cli::parse_resolution("16x"), cli::UsageError);
    }

    TEST_CASE("bindings")
    {
        const auto [name, value] = cli::parse_binding("a=1+2*i");
        CHECK(name == "a");
        CHECK(value == cplx(1, 2));
        CHECK_THROWS_AS(cli::parse_binding("=3"), cli::UsageError);
    }
}

TEST_SUITE("mesh")
{
    TEST_CASE("triangulation of a 3x3 patch with a hole")
    {
        SurfacePatch p;
        p.nx = p.ny = 3;
        p.target = Target::E3Direct;
        p.X.assign(9, LorentzVec{});
        p.z.assign(9, 0.0);
        p.records.assign(9, SampleRecord{true, "", 0, 0});
        p.records[4].valid = false;
        const TriMesh m = triangulate(p);
        CHECK(m.vertices.size() == 8);
        CHECK(m.faces.size() == 2);
        p.records[4].valid = true;
        p.records[0].valid = false;
        const TriMesh m2 = triangulate(p);
        CHECK(m2.faces.size() == 6);
    }

    TEST_CASE("mesh format from extension")
    {
        CHECK(mesh_format_for("a.OBJ") == MeshFormat::Obj);
        CHECK(mesh_format_for("dir/a.ply") == MeshFormat::Ply);
        CHECK_THROWS_AS(mesh_format_for("a.stl"), Error);
    }
}

TEST_SUITE("checks")
{
    TEST_CASE("make_check semantics")
    {
        const Check c = make_check("x", 1.0, {0.5, -2.0, 0.25});
        CHECK(c.max == 0.5);
        CHECK(c.mean == doctest::Approx(-1.25 / 3));
        CHECK(c.pass);
        CHECK_FALSE(make_check("x", 1.0, {}).pass);
        CHECK_FALSE(make_check("x", 1.0, {0.1, std::nan("")}).pass);
        CHECK_FALSE(make_check("x", 1.0, {1.0}).pass);
    }
}
