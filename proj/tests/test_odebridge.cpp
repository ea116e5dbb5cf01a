#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "solsurf/error.hpp"
#include "solsurf/odebridge.hpp"

using namespace solsurf;

TEST_SUITE("odebridge")
{
    TEST_CASE("ODE coefficients of the error-function data")
    {
        for (int n : {1, 2, -1}) {
            const auto data = erf_example_data(n, 1.0, 0.0, 1.0);
            const OdeSpec s = ode_coefficients(data);
            CHECK(s.p.structurally_equal(Expr::parse("-2*z")));
            CHECK(s.q.structurally_equal(Expr::number(-2.0 * n)));
            MESSAGE("p = ", s.p.to_string(), ", q = ", s.q.to_string());
        }
        // complex c and lambda != 1 still give the same equation
        const OdeSpec s = ode_coefficients(erf_example_data(3, cplx(0.5, 0.7), cplx(1, -1), 0.4));
        CHECK(s.p.structurally_equal(Expr::parse("-2*z")));
        CHECK(s.q.structurally_equal(Expr::number(-6.0)));
    }

    TEST_CASE("ODE coefficients of the Enneper data")
    {
        const OdeSpec s = ode_coefficients(fixture::enneper(1.0));
        CHECK(s.p.is_number(0.0));
        CHECK(s.q.is_number(-1.0));
        CHECK(standard_potential(fixture::enneper(1.0)).is_number(-1.0));
    }

    TEST_CASE("standard potential of the error-function data is 1 - z^2 - 2n")
    {
        for (int n : {1, 2}) {
            const Expr Q = standard_potential(erf_example_data(n, 1.0, 0.0, 1.0));
            for (cplx z : {cplx(0.3, 0.1), cplx(-1.2, 0.5)})
                CHECK(std::abs(Q.eval(z) - (1.0 - z * z - 2.0 * n)) < 1e-12);
        }
    }

    TEST_CASE("logarithmic derivative")
    {
        const Expr f = Expr::parse("3*exp(z^2)*sqrt(1+z)/(2+z)^3");
        const Expr L = log_derivative(f);
        for (int k = 0; k < 10; ++k) {
            const cplx z = oracle::uniform_disc(0.8);
            CHECK(std::abs(L.eval(z) - f.derivative().eval(z) / f.eval(z)) < 1e-12 * std::max(1.0, std::abs(L.eval(z))));
        }
    }

    TEST_CASE("polynomial recognition")
    {
        const auto r = recognize_polynomial(Expr::parse("exp(z)*exp(-z)*(z^2 - 1)"));
        REQUIRE(r.has_value());
        CHECK(r->structurally_equal(Expr::parse("-1 + z^2")));
        CHECK_FALSE(recognize_polynomial(Expr::parse("exp(z)")).has_value());
        CHECK_FALSE(recognize_polynomial(Expr::parse("1/z")).has_value());
    }

    TEST_CASE("weierstrass_from_ode examples")
    {
        OdeSpec s{Expr::parse("-2*z"), Expr::parse("-2"), 1.0, {}};
        const auto d = weierstrass_from_ode(s, 1.0, 0.0);
        CHECK(d.eta().to_string() == "exp(0.5*z^2)");
        for (cplx z : {cplx(0.3, 0.2), cplx(1, -0.4)}) {
            CHECK(std::abs(d.eta().eval(z) - std::exp(z * z / 2.0)) < 1e-13 * std::abs(std::exp(z * z / 2.0)));
            CHECK(std::abs(d.psi().eval(z) - std::sqrt(std::numbers::pi) * oracle::erf_maclaurin(z)) < 1e-12);
        }
        OdeSpec flat{Expr::parse("0"), Expr::number(-0.7), 0.7, {}};
        const auto e = weierstrass_from_ode(flat, 1.0, 0.0);
        CHECK(e.eta().is_number(1.0));
        CHECK(std::abs(e.psi().eval(cplx(0.4, 0.3)) - cplx(0.4, 0.3)) < 1e-15);
        CHECK_THROWS_AS(weierstrass_from_ode({Expr::parse("z"), Expr::parse("1"), 0.0, {}}), Error);
        try {
            weierstrass_from_ode({Expr::parse("1/z"), Expr::parse("1"), 1.0, {}}, 1.0, 0.0, 0.0);
            FAIL("expected NonIntegrableForm");
        } catch (const Error& err) {
            CHECK(err.kind() == ErrorKind::NonIntegrableForm);
        }
    }

    TEST_CASE("bridge round trip: coefficients come back pointwise")
    {
        const std::vector<OdeSpec> specs = {
            {Expr::parse("-2*z"), Expr::parse("-2"), 1.0, {}},
            {Expr::parse("1+z"), Expr::parse("-0.5"), 0.8, {}},
            {Expr::parse("0.3*z"), Expr::parse("-1+z"), 1.3, {}},  // numeric psi
            {Expr::parse("sin(z)"), Expr::parse("-1"), 1.0, {}},   // numeric eta and psi
        };
        for (const auto& s : specs) {
            const auto d = weierstrass_from_ode(s, cplx(0.9, 0.2), cplx(0.1, 0.0), 0.0);
            const OdeSpec back = ode_coefficients(d);
            for (int k = 0; k < 50; ++k) {
                const cplx z = oracle::uniform_disc(1.0);
                const cplx p = s.p.eval(z), q = s.q.eval(z);
                CHECK(std::abs(back.p.eval(z) - p) < 1e-10 * std::max(1.0, std::abs(p)));
                CHECK(std::abs(back.q.eval(z) - q) < 1e-10 * std::max(1.0, std::abs(q)));
            }
        }
    }

    TEST_CASE("bridge round trip from data recovers psi' and eta up to constants")
    {
        for (int k = 0; k < 3; ++k) {
            const auto data = fixture::random_weierstrass(0.9);
            const auto back = weierstrass_from_ode(ode_coefficients(data), 1.0, 0.0, 0.0);
            const cplx ratio0 = data.values(0.0).eta / back.values(0.0).eta;
            for (int j = 0; j < 5; ++j) {
                const cplx z = oracle::uniform_disc(0.6);
                const auto a = data.values(z), b = back.values(z);
                CHECK(std::abs(a.eta / b.eta - ratio0) < 1e-8 * std::abs(ratio0));
                // psi' scales by 1/ratio^2
                CHECK(std::abs(b.psi_z - a.psi_z * ratio0 * ratio0) < 1e-8 * std::max(1.0, std::abs(b.psi_z)));
            }
        }
    }

    TEST_CASE("integrated columns satisfy the ODE, the elimination identity and the standard form")
    {
        std::vector<WeierstrassData> sets = {erf_example_data(1, 1.0, 0.0, 1.0), fixture::enneper(1.0)};
        for (int k = 0; k < 3; ++k)
            sets.push_back(fixture::random_weierstrass(oracle::uniform(0.3, 1.2)));
        for (const auto& d : sets) {
            for (cplx z : {d.z0() + cplx(0.3, 0.2), d.z0() + cplx(-0.2, 0.4)}) {
                const auto r = bridge_residuals(d, z);
                CHECK(r.ode < 1e-6);
                CHECK(r.elimination < 1e-6);
                CHECK(r.standard < 1e-5);
            }
        }
    }

    TEST_CASE("error-function surface")
    {
        SampleOptions opt;
        opt.nx = opt.ny = 16;
        const Rect dom{0.5, 1.5, -0.5, 0.5};
        const auto ex = erf_example_surface(1, 1.0, 0.0, 1.0, dom, opt);
        CHECK(ex.constancy < 1e-10);
        CHECK(ex.patch.valid_count() == 256u);
        for (std::size_t k = 0; k < ex.patch.records.size(); ++k)
            CHECK(ex.patch.records[k].hyperboloid < 1e-6);
        // base point z0 = 1 is on a grid with odd resolution
        opt.nx = opt.ny = 11;
        opt.tol = 1e-12;
        const auto odd = erf_example_surface(1, 1.0, 0.0, 2.0, dom, opt);
        const LorentzVec x = odd.patch.X[odd.patch.index(5, 5)];
        CHECK(std::abs(x.x0 - 0.5) < 1e-9);
        CHECK(std::abs(x.x1) + std::abs(x.x2) + std::abs(x.x3) < 1e-9);
    }

    TEST_CASE("Kummer cross-check report")
    {
        const auto rep = kummer_crosscheck(1, 1.0, 0.0, 1.0, cplx(1.2, 0.3));
        CHECK(rep.checks.size() == 8u);
        for (const auto& c : rep.checks)
            MESSAGE(c.name, " = ", c.value, (c.pass ? " pass" : " FAIL"));
        // The columns built from H_{-n} and 1F1(n/2, 1/2, z^2) are genuine solutions.
        for (const auto& c : rep.checks)
            if (c.name == "hermite_column_system" || c.name == "kummer_column_system")
                CHECK(c.pass);
    }
}
