#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "solsurf/error.hpp"
#include "solsurf/geom.hpp"

using namespace solsurf;

namespace {

SurfaceFields perturb_u(SurfaceFields f, double amp)
{
    auto u = f.u;
    f.u = [u, amp](cplx z) { return u(z) + amp * (z * z).real() * z.imag(); };
    f.u_z = nullptr;
    return f;
}

SurfaceFields perturb_Q(SurfaceFields f, cplx amp)
{
    auto Q = f.Q;
    f.Q = [Q, amp](cplx z) { return Q(z) + amp * std::conj(z); };
    return f;
}

}  // namespace

TEST_SUITE("geom")
{
    TEST_CASE("weierstrass_solution examples")
    {
        const auto data = fixture::enneper(1.0);
        auto s = weierstrass_solution(data, 0.0);
        CHECK(s.u == 0.0);
        CHECK(s.Q == -1.0);
        s = weierstrass_solution(data, 1.0);
        CHECK(std::exp(0.5 * s.u) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(s.u == doctest::Approx(2 * std::log(2.0)).epsilon(1e-15));
        CHECK(s.Q == -1.0);
    }

    TEST_CASE("error-function data has constant Hopf coefficient")
    {
        // psi' = 2 exp(-z^2): psi = sqrt(pi) erf(z)
        const WeierstrassData data(Expr::parse("exp(z^2/2)"), Expr::parse("sqrt(pi)*erf(z)"), 1.0);
        for (cplx z : fixture::test_grid(9, 1.0))
            CHECK(std::abs(weierstrass_solution(data, z).Q + 2.0) < 1e-13);
    }

    TEST_CASE("poles and zeros are domain errors")
    {
        const WeierstrassData data(Expr::parse("z"), Expr::parse("1/(z-1)"), 1.0);
        for (cplx z : {cplx(0.0), cplx(1.0)}) {
            try {
                weierstrass_solution(data, z);
                FAIL("expected DomainError");
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::DomainError);
            }
        }
    }

    TEST_CASE("analytic u_z matches finite differences")
    {
        for (int k = 0; k < 5; ++k) {
            const auto data = fixture::random_weierstrass(0.7);
            const auto f = weierstrass_fields(data);
            for (int j = 0; j < 5; ++j) {
                const cplx z = oracle::uniform_disc(0.6);
                const cplx fd = d_z([&](cplx w) { return cplx(f.u(w)); }, z, 1e-3);
                CHECK(std::abs(fd - f.u_z(z)) < 1e-8);
            }
        }
    }

    TEST_CASE("Wirtinger helpers on known functions")
    {
        const cplx z(0.3, -0.2);
        auto conj_sq = [](cplx w) { return std::conj(w) * std::conj(w); };
        CHECK(std::abs(d_z(conj_sq, z)) < 1e-9);
        CHECK(std::abs(d_zbar(conj_sq, z) - 2.0 * std::conj(z)) < 1e-9);
        CHECK(std::abs(d_zzbar([](cplx w) { return std::norm(w) * std::norm(w); }, z, 1e-3) - 4 * std::norm(z)) <
              1e-8);
    }

    TEST_CASE("GMC residual vanishes for Weierstrass fields and the Liouville solution")
    {
        const auto data = fixture::enneper(1.0);
        const auto f = weierstrass_fields(data);
        for (cplx z : {cplx(0.3, 0.2), cplx(-0.7, 0.4), cplx(1.1, -0.5)}) {
            // u_zzbar = 2/(1+|z|^2)^2 independently
            CHECK(std::abs(d_zzbar(f.u, z, 1e-3) - 2.0 / std::pow(1.0 + std::norm(z), 2)) < 1e-6);
            const auto r = gmc_residual(f, z, 1e-3);
            CHECK(std::abs(r.r1) < 1e-5);
            CHECK(std::abs(r.r2) < 1e-5);
        }
        const auto lf = liouville_fields(Expr::parse("z"), 0.8);
        for (cplx z : {cplx(0.3, 0.2), cplx(-0.5, -0.9)})
            CHECK(std::abs(gmc_residual(lf, z, 1e-3).r1) < 1e-5);
        const auto lf2 = liouville_fields(Expr::parse("exp(z)+z^2"), 0.8);
        CHECK(std::abs(gmc_residual(lf2, cplx(0.2, 0.1), 1e-3).r1) < 1e-5);
    }

    TEST_CASE("perturbed field fails GMC")
    {
        const auto f = perturb_u(weierstrass_fields(fixture::enneper(1.0)), 0.1);
        double worst = 0;
        for (cplx z : fixture::test_grid(10, 1.0))
            worst = std::max(worst, std::abs(gmc_residual(f, z, 1e-3).r1));
        CHECK(worst > 1e-2);
    }

    TEST_CASE("Q is holomorphic for Weierstrass data")
    {
        for (int k = 0; k < 3; ++k) {
            const auto f = weierstrass_fields(fixture::random_weierstrass(1.0));
            for (int j = 0; j < 10; ++j)
                CHECK(std::abs(d_zbar(f.Q, oracle::uniform_disc(0.7))) < 1e-6);
        }
    }

    TEST_CASE("build_UV examples")
    {
        const LaxPair p = build_UV(0.0, -1.0, 1.0, 1.0, 0.0);
        CHECK(p.U == Mat2C{0.0, 1.0, 1.0, 0.0});
        CHECK(p.V == Mat2C{0.0, -1.0, 0.0, 0.0});
        for (int k = 0; k < 20; ++k) {
            const double u = oracle::uniform(-2, 2), H = oracle::uniform(-1, 1), lam = oracle::uniform(-1, 1);
            const auto q = build_UV(u, oracle::uniform_disc(2), H, lam, oracle::uniform_disc(2));
            CHECK(q.U.trace() == 0.0);
            CHECK(q.V.trace() == 0.0);
            const auto r = build_UV(u, oracle::uniform_disc(2), lam, lam, oracle::uniform_disc(2));
            CHECK(r.V.a21 == 0.0);
        }
    }

    TEST_CASE("zero-curvature residual examples")
    {
        const auto data = fixture::enneper(1.0);
        const cplx z(0.3, 0.2);
        CHECK(zero_curvature_residual(data, z, 1e-3).max_norm() < 1e-5);
        auto broken = weierstrass_fields(data);
        broken.H = [](cplx) { return 1.5; };
        CHECK(zero_curvature_residual(broken, z, 1e-3).max_norm() > 1e-2);
        CHECK(zero_curvature_residual(fixture::enneper(0.0), z, 1e-3).max_norm() < 1e-5);
    }

    TEST_CASE("zero curvature and GMC agree entrywise")
    {
        // Off-diagonal entries carry -e^{-u/2} r2 and its conjugate, the diagonal +-r1/2.
        const auto f = perturb_Q(perturb_u(weierstrass_fields(fixture::enneper(0.6)), 0.3), cplx(0.1, 0.05));
        for (cplx z : {cplx(0.2, 0.3), cplx(-0.4, 0.1)}) {
            const Mat2C zc = zero_curvature_residual(f, z, 1e-3);
            const GmcResidual g = gmc_residual(f, z, 1e-3);
            const double eh = std::exp(-0.5 * f.u(z));
            CHECK(std::abs(zc.a11 - 0.5 * g.r1) < 1e-6);
            CHECK(std::abs(zc.a22 + 0.5 * g.r1) < 1e-6);
            CHECK(std::abs(zc.a12 + eh * g.r2) < 1e-6);
            CHECK(std::abs(zc.a21 + eh * std::conj(g.r2)) < 1e-6);
        }
    }

    TEST_CASE("Corollary 1 equivalence over random data")
    {
        const auto grid = fixture::test_grid();
        for (int k = 0; k < 5; ++k) {
            const auto data = fixture::random_weierstrass(oracle::uniform(0.2, 1.5));
            const auto good = weierstrass_fields(data);
            const auto bad = k % 2 ? perturb_u(good, 0.3) : perturb_Q(good, cplx(0.2, -0.1));
            double zc_good = 0, gmc_good = 0, zc_bad = 0, gmc_bad = 0;
            for (cplx z : grid) {
                zc_good = std::max(zc_good, zero_curvature_residual(good, z, 1e-3).max_norm());
                gmc_good = std::max(gmc_good, gmc_residual(good, z, 1e-3).max_abs());
                zc_bad = std::max(zc_bad, zero_curvature_residual(bad, z, 1e-3).max_norm());
                gmc_bad = std::max(gmc_bad, gmc_residual(bad, z, 1e-3).max_abs());
            }
            CHECK(zc_good < 1e-4);
            CHECK(gmc_good < 1e-4);
            CHECK(zc_bad > 1e-2);
            CHECK(gmc_bad > 1e-2);
        }
    }

    TEST_CASE("stencil outside the domain")
    {
        const WeierstrassData data(Expr::parse("1"), Expr::parse("1/z"), 1.0);
        try {
            gmc_residual(weierstrass_fields(data), cplx(1e-3, 0), 1e-3);
            FAIL("expected StencilOutOfDomain");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::StencilOutOfDomain);
        }
    }

    TEST_CASE("unbound parameters are rejected at construction")
    {
        CHECK_THROWS_AS(WeierstrassData(Expr::parse("c"), Expr::parse("z"), 1.0), Error);
        CHECK_NOTHROW(WeierstrassData(Expr::parse("c"), Expr::parse("z"), 1.0, 0.0, {{"c", 2.0}}));
    }
}
