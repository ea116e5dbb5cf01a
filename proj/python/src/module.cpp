#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "solsurf/cli.hpp"
#include "solsurf/error.hpp"
#include "solsurf/immersion.hpp"
#include "solsurf/lsp.hpp"
#include "solsurf/odebridge.hpp"
#include "solsurf/specfun.hpp"
#include "solsurf/verify.hpp"

namespace py = pybind11;
using namespace solsurf;

namespace {

py::array_t<cplx> to_numpy(const Mat2C& m)
{
    py::array_t<cplx> a({2, 2});
    auto r = a.mutable_unchecked<2>();
    r(0, 0) = m.a11;
    r(0, 1) = m.a12;
    r(1, 0) = m.a21;
    r(1, 1) = m.a22;
    return a;
}

py::array_t<double> to_numpy(const LorentzVec& x)
{
    py::array_t<double> a(4);
    auto r = a.mutable_unchecked<1>();
    for (int c = 0; c < 4; ++c)
        r(c) = x[c];
    return a;
}

WeierstrassData make_data(const std::string& eta, const std::string& psi, double lambda, cplx z0,
                          const ParamMap& params)
{
    return WeierstrassData(Expr::parse(eta), Expr::parse(psi), lambda, z0, params);
}

PathSpec path_of(const std::vector<cplx>& points)
{
    if (points.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "a path needs at least two points");
    return PathSpec::through(points);
}

py::dict patch_dict(const SurfacePatch& p)
{
    py::array_t<double> X({p.ny, p.nx, 4});
    py::array_t<bool> valid({p.ny, p.nx});
    py::array_t<cplx> z({p.ny, p.nx});
    auto xr = X.mutable_unchecked<3>();
    auto vr = valid.mutable_unchecked<2>();
    auto zr = z.mutable_unchecked<2>();
    for (int j = 0; j < p.ny; ++j)
        for (int i = 0; i < p.nx; ++i) {
            const auto k = p.index(i, j);
            for (int c = 0; c < 4; ++c)
                xr(j, i, c) = p.X[k][c];
            vr(j, i) = p.records[k].valid;
            zr(j, i) = p.z[k];
        }
    py::dict d;
    d["target"] = to_string(p.target);
    d["lambda"] = p.lambda;
    d["z"] = z;
    d["X"] = X;
    d["valid"] = valid;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Constant mean curvature surfaces in H3 and minimal surfaces in E3 from Weierstrass data";

    static py::exception<Error> exc(m, "SolsurfError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    m.def("erf", [](cplx z) { return erf_c(z); }, py::arg("z"));
    m.def("kummer_1f1", [](cplx a, cplx b, cplx z) { return kummer_1f1(a, b, z); }, py::arg("a"), py::arg("b"),
          py::arg("z"));
    m.def("hermite_h", [](int nu, cplx z) { return hermite_h(nu, z); }, py::arg("nu"), py::arg("z"));

    m.def(
        "enneper_weierstrass",
        [](const std::string& eta, const std::string& psi, const std::vector<cplx>& path, const ParamMap& params) {
            const WeierstrassData d = make_data(eta, psi, 1.0, path.front(), params);
            return enneper_weierstrass(d, path_of(path));
        },
        py::arg("eta"), py::arg("psi"), py::arg("path"), py::arg("params") = ParamMap{});

    m.def(
        "integrate_reduced",
        [](const std::string& eta, const std::string& psi, double lambda, const std::vector<cplx>& path, double tol,
           const ParamMap& params) {
            const WeierstrassData d = make_data(eta, psi, lambda, path.front(), params);
            IntegrateOptions opt;
            opt.tol = tol;
            return to_numpy(integrate_reduced(d, path_of(path), opt).value);
        },
        py::arg("eta"), py::arg("psi"), py::arg("lambda_"), py::arg("path"), py::arg("tol") = 1e-10,
        py::arg("params") = ParamMap{});

    m.def(
        "picard_series",
        [](const std::string& eta, const std::string& psi, double lambda, cplx z, int order, cplx z0) {
            return to_numpy(picard_series(make_data(eta, psi, lambda, z0, {}), z, order));
        },
        py::arg("eta"), py::arg("psi"), py::arg("lambda_"), py::arg("z"), py::arg("order"), py::arg("z0") = cplx(0));

    m.def(
        "gauge_matrix",
        [](const std::string& eta, const std::string& psi, double lambda, cplx z) {
            return to_numpy(gauge_matrix(make_data(eta, psi, lambda, 0.0, {}), z));
        },
        py::arg("eta"), py::arg("psi"), py::arg("lambda_"), py::arg("z"));

    m.def(
        "sym_immersion",
        [](const std::string& eta, const std::string& psi, double lambda, const std::vector<cplx>& path) {
            const WeierstrassData d = make_data(eta, psi, lambda, path.front(), {});
            return to_numpy(sym_immersion(integrate_reduced(d, path_of(path), {1e-12}), lambda));
        },
        py::arg("eta"), py::arg("psi"), py::arg("lambda_"), py::arg("path"));

    m.def(
        "sample_surface",
        [](const std::string& eta, const std::string& psi, double lambda, std::array<double, 4> domain, int nx,
           int ny, const std::string& target, double tol, std::optional<cplx> z0, const ParamMap& params) {
            const Rect r{domain[0], domain[1], domain[2], domain[3]};
            const cplx base = z0.value_or(cplx(0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)));
            const WeierstrassData d = make_data(eta, psi, lambda, base, params);
            SampleOptions opt;
            opt.nx = nx;
            opt.ny = ny;
            opt.tol = tol;
            SurfacePatch p;
            {
                py::gil_scoped_release release;
                p = sample_surface(d, r, target_from_string(target), opt);
            }
            return patch_dict(p);
        },
        py::arg("eta"), py::arg("psi"), py::arg("lambda_") = 1.0,
        py::arg("domain") = std::array<double, 4>{-1, 1, -1, 1}, py::arg("nx") = 32, py::arg("ny") = 32,
        py::arg("target") = "h3", py::arg("tol") = 1e-8, py::arg("z0") = py::none(), py::arg("params") = ParamMap{});

    m.def(
        "ode_coefficients",
        [](const std::string& eta, const std::string& psi, double lambda) {
            const WeierstrassData d = make_data(eta, psi, lambda, 0.0, {});
            const OdeSpec s = ode_coefficients(d);
            return py::make_tuple(s.p.to_string(), s.q.to_string(), standard_potential(d).to_string());
        },
        py::arg("eta"), py::arg("psi"), py::arg("lambda_") = 1.0);

    m.def(
        "weierstrass_from_ode",
        [](const std::string& p, const std::string& q, double lambda, cplx c, cplx c1, cplx z0) {
            const WeierstrassData d = weierstrass_from_ode(OdeSpec{Expr::parse(p), Expr::parse(q), lambda, {}}, c, c1, z0);
            return py::make_tuple(d.eta().to_string(), d.psi().to_string());
        },
        py::arg("p"), py::arg("q"), py::arg("lambda_") = 1.0, py::arg("c") = cplx(1), py::arg("c1") = cplx(0),
        py::arg("z0") = cplx(0));

    m.def(
        "kummer_crosscheck",
        [](int n, cplx c, cplx c1, double lambda, cplx z) {
            const KummerReport k = kummer_crosscheck(n, c, c1, lambda, z);
            py::list checks;
            for (const auto& ch : k.checks) {
                py::dict d;
                d["name"] = ch.name;
                d["value"] = ch.value;
                d["threshold"] = ch.threshold;
                d["pass"] = ch.pass;
                d["note"] = ch.note;
                checks.append(d);
            }
            return checks;
        },
        py::arg("n"), py::arg("c"), py::arg("c1"), py::arg("lambda_"), py::arg("z"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a solsurf command in-process; returns (exit_code, stdout, stderr).");
}
