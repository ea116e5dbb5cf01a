#include <doctest.h>

#include <chrono>
#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "solsurf/error.hpp"
#include "solsurf/immersion.hpp"

using namespace solsurf;

namespace {

Wavefunction wave(const Mat2C& m)
{
    Wavefunction w;
    w.value = m;
    return w;
}

double max_hyperboloid(const SurfacePatch& p)
{
    double m = 0;
    for (const auto& r : p.records)
        if (r.valid)
            m = std::max(m, r.hyperboloid);
    return m;
}

}  // namespace

TEST_SUITE("immersion")
{
    TEST_CASE("sym_immersion examples")
    {
        CHECK(sym_immersion(wave(Mat2C::identity()), 2.0) == LorentzVec{0.5, 0, 0, 0});
        const LorentzVec x = sym_immersion(wave(Mat2C::diag(2.0, 0.5)), 1.0);
        CHECK(x.x0 == doctest::Approx(2.125));
        CHECK(x.x3 == doctest::Approx(1.875));
        CHECK(x.x1 == 0.0);
        CHECK(x.x2 == 0.0);
        for (int k = 0; k < 50; ++k) {
            const double lam = oracle::uniform(0.2, 3);
            const LorentzVec f = sym_immersion(wave(oracle::random_unimodular()), lam);
            CHECK(std::abs(lorentz_inner(f, f) + 1.0 / (lam * lam)) < 1e-8 * std::max(1.0, f.x0 * f.x0));
        }
        CHECK_THROWS_AS(sym_immersion(wave(Mat2C::identity()), 0.0), Error);
    }

    TEST_CASE("shifted immersion at the identity is the origin")
    {
        CHECK(shifted_immersion(wave(Mat2C::identity()), 0.3) == LorentzVec{0, 0, 0, 0});
        try {
            shifted_immersion(wave(Mat2C::identity()), 0.0);
            FAIL("expected");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::LambdaZero);
        }
    }

    TEST_CASE("Enneper-Weierstrass closed forms")
    {
        const auto data = fixture::enneper(0.0);
        const Vec3 a = enneper_weierstrass(data, PathSpec::straight(0.0, 1.0));
        CHECK(std::abs(a[0] - 1.0 / 3) < 1e-8);
        CHECK(std::abs(a[1]) < 1e-8);
        CHECK(std::abs(a[2] - 0.5) < 1e-8);
        const Vec3 b = enneper_weierstrass(data, PathSpec::straight(0.0, cplx(0, 1)));
        CHECK(std::abs(b[0]) < 1e-8);
        CHECK(std::abs(b[1] + 1.0 / 3) < 1e-8);
        CHECK(std::abs(b[2] + 0.5) < 1e-8);
        const Vec3 c = enneper_weierstrass(data, PathSpec::straight(0.3, 0.3));
        CHECK(c == Vec3{0, 0, 0});
        for (int k = 0; k < 10; ++k) {
            const cplx z = oracle::uniform_disc(1.5);
            const Vec3 f = enneper_weierstrass(data, PathSpec::through({0.0, z.real(), z}));
            const auto ref = oracle::enneper_closed_form(z);
            for (int c3 = 0; c3 < 3; ++c3)
                CHECK(std::abs(f[c3] - ref[c3]) < 1e-10);
        }
    }

    TEST_CASE("limit law for the Enneper data")
    {
        const cplx z = 1.0;
        const LorentzVec L = clifford_limit(fixture::enneper(1.0), PathSpec::straight(0.0, z));
        // Psi_1 + Psi_1^dagger = [[1, -2/3], [-2/3, -1]]
        CHECK(std::abs(L.x0) < 1e-12);
        CHECK(std::abs(L.x1 + 2.0 / 3) < 1e-12);
        CHECK(std::abs(L.x2) < 1e-12);
        CHECK(std::abs(L.x3 - 1.0) < 1e-12);
        const Vec3 mapped = limit_from_enneper(oracle::enneper_closed_form(z));
        CHECK(std::abs(mapped[0] - L.x1) < 1e-12);
        CHECK(std::abs(mapped[2] - L.x3) < 1e-12);

        std::vector<double> errs;
        for (double lam : {1e-2, 1e-3}) {
            const auto w = integrate_reduced(fixture::enneper(lam), PathSpec::straight(0.0, z), {1e-13});
            const LorentzVec x = shifted_immersion(w, lam);
            errs.push_back(std::sqrt(std::pow(x.x0, 2) + std::pow(x.x1 - L.x1, 2) + std::pow(x.x2 - L.x2, 2) +
                                     std::pow(x.x3 - L.x3, 2)));
        }
        CHECK(errs[1] < 2e-3);
        CHECK(std::log10(errs[0] / errs[1]) > 0.9);
    }

    TEST_CASE("limit equals the mapped Weierstrass integral for random data")
    {
        for (int k = 0; k < 5; ++k) {
            const auto data = fixture::random_weierstrass(1.0);
            const cplx z = oracle::uniform_disc(0.8);
            const LorentzVec L = clifford_limit(data, PathSpec::straight(0.0, z));
            const Vec3 f = enneper_weierstrass(data, PathSpec::straight(0.0, z));
            const Vec3 back = enneper_from_limit(L);
            CHECK(std::abs(L.x0) < 1e-10);
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(back[c] - f[c]) < 1e-10);
        }
    }

    TEST_CASE("E3-direct sampling on a 2x2 grid")
    {
        SampleOptions opt;
        opt.nx = opt.ny = 2;
        const auto p = sample_surface(fixture::enneper(0.0), Rect{0, 0.1, 0, 0.1}, Target::E3Direct, opt);
        REQUIRE(p.valid_count() == 4);
        CHECK(p.X[0] == LorentzVec{0, 0, 0, 0});
        for (std::size_t k = 0; k < 4; ++k) {
            const auto ref = oracle::enneper_closed_form(p.z[k]);
            CHECK(std::abs(p.X[k].x1 - ref[0]) < 1e-12);
            CHECK(std::abs(p.X[k].x2 - ref[1]) < 1e-12);
            CHECK(std::abs(p.X[k].x3 - ref[2]) < 1e-12);
        }
    }

    TEST_CASE("hyperboloid law on 64x64 Enneper patches")
    {
        SampleOptions opt;
        opt.nx = opt.ny = 64;
        opt.tol = 1e-8;
        for (double lam : {0.5, 1.0, 2.0}) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto p = sample_surface(fixture::enneper(lam), Rect{}, Target::H3, opt);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            MESSAGE("lambda ", lam, " max hyperboloid ", max_hyperboloid(p), " in ", secs, " s");
            CHECK(p.valid_count() == 64u * 64u);
            CHECK(max_hyperboloid(p) < 1e-6);
            CHECK(secs < 10.0);
        }
    }

    TEST_CASE("sampling is independent of the thread count")
    {
        SampleOptions opt;
        opt.nx = 12;
        opt.ny = 9;
        opt.threads = 1;
        const auto a = sample_surface(fixture::enneper(0.7), Rect{}, Target::H3, opt);
        opt.threads = 4;
        const auto b = sample_surface(fixture::enneper(0.7), Rect{}, Target::H3, opt);
        CHECK(a.X == b.X);
    }

    TEST_CASE("poles are masked, not fatal")
    {
        const WeierstrassData data(Expr::parse("1"), Expr::parse("1/z"), 1.0, cplx(0.5, 0.5));
        SampleOptions opt;
        opt.nx = opt.ny = 11;
        const auto p = sample_surface(data, Rect{-1, 1, -1, 1}, Target::H3, opt);
        CHECK_FALSE(p.valid(5, 5));
        CHECK(p.valid_count() >= 100u);
        for (std::size_t k = 0; k < p.records.size(); ++k)
            if (p.records[k].valid)
                CHECK(p.records[k].hyperboloid < 1e-6 * std::max(1.0, p.X[k].x0 * p.X[k].x0));
    }

    TEST_CASE("mean curvature and conformality on CMC and minimal patches")
    {
        SampleOptions opt;
        opt.nx = opt.ny = 21;
        opt.tol = 1e-13;
        const Rect r{0.1, 0.3, -0.1, 0.1};  // h = 1e-2
        const auto h3 = sample_surface(fixture::enneper(0.5), r, Target::H3, opt);
        const auto e3 = sample_surface(fixture::enneper(0.0), r, Target::E3Direct, opt);
        for (const auto* p : {&h3, &e3}) {
            const auto frames = frame_field(*p);
            int n = 0;
            for (const auto& f : frames) {
                if (!f)
                    continue;
                ++n;
                const double expected = p->target == Target::H3 ? 0.5 : 0.0;
                CHECK(std::abs(f->H_est - expected) < 5e-3);
                CHECK(f->conformality < 1e-5 * std::exp(f->u));
                CHECK(f->normal_defect < 1e-8);
            }
            CHECK(n == 17 * 17);
        }
        // Hopf coefficient and conformal factor match the Weierstrass fields
        const auto f = frame_and_curvature(h3, 10, 10);
        const auto ref = weierstrass_solution(fixture::enneper(0.5), h3.z[h3.index(10, 10)]);
        CHECK(std::abs(f.u - ref.u) < 1e-6);
        CHECK(std::abs(std::abs(f.Q_est) - std::abs(ref.Q)) < 1e-5);
    }

    TEST_CASE("mean-curvature estimate converges as the grid is refined")
    {
        std::vector<double> err;
        for (double h : {0.08, 0.04}) {
            SampleOptions opt;
            opt.nx = opt.ny = 5;
            opt.tol = 1e-14;
            const cplx c(0.4, 0.3);
            const Rect r{c.real() - 2 * h, c.real() + 2 * h, c.imag() - 2 * h, c.imag() + 2 * h};
            const auto p = sample_surface(fixture::enneper(1.0), r, Target::H3, opt);
            err.push_back(std::abs(frame_and_curvature(p, 2, 2).H_est - 1.0));
        }
        MESSAGE("H errors ", err[0], " ", err[1]);
        CHECK(std::log2(err[0] / err[1]) >= 1.0);
    }

    TEST_CASE("isometries preserve mutual Lorentz products")
    {
        SampleOptions opt;
        opt.nx = opt.ny = 8;
        const auto p = sample_surface(fixture::enneper(1.0), Rect{}, Target::H3, opt);
        const Mat2C a = oracle::random_unimodular();
        for (int k = 0; k < 10; ++k) {
            const auto i = std::size_t(oracle::uniform(0, 63.99)), j = std::size_t(oracle::uniform(0, 63.99));
            const double before = lorentz_inner(p.X[i], p.X[j]);
            const double after = lorentz_inner(rho_action(a, p.X[i]), rho_action(a, p.X[j]));
            CHECK(std::abs(before - after) < 1e-9 * std::max(1.0, std::abs(before)));
        }
    }

    TEST_CASE("loop period diagnostic")
    {
        const auto lp = loop_period(fixture::enneper(1.0), {0.0, 1.0, cplx(1, 1), cplx(0, 1), 0.0});
        for (double c : lp.real_period)
            CHECK(std::abs(c) < 1e-10);
        CHECK(lp.monodromy < 1e-8);
        // psi eta^2 = i/z has residue i: the third component picks up a real period -2 pi
        const WeierstrassData pole(Expr::parse("1"), Expr::parse("i/z"), 1.0, 1.0);
        const auto lp2 = loop_period(pole, {1.0, cplx(0, 1), -1.0, cplx(0, -1), 1.0});
        CHECK(std::abs(lp2.real_period[2] + 2 * std::numbers::pi) < 1e-8);
    }
}
