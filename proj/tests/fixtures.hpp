#pragma once
// Shared test data builders.

#include <string>

#include "oracles.hpp"
#include "solsurf/geom.hpp"

namespace fixture {

using solsurf::cplx;
using solsurf::Expr;
using solsurf::WeierstrassData;

inline WeierstrassData enneper(double lambda, cplx z0 = 0.0)
{
    return WeierstrassData(Expr::parse("1"), Expr::parse("z"), lambda, z0);
}

inline Expr literal(cplx c) { return Expr::number(c); }

/// Random Weierstrass data without zeros of eta or poles in the disc |z| < 1.
inline WeierstrassData random_weierstrass(double lambda)
{
    const Expr z = Expr::variable();
    const cplx a = oracle::uniform_disc(0.4) + 1.0, b = oracle::uniform_disc(0.4);
    const cplx c = oracle::uniform_disc(0.8), d = oracle::uniform_disc(1.0), e = oracle::uniform_disc(0.6);
    const Expr eta = literal(a) + literal(b) * z + literal(0.2) * solsurf::exp(literal(oracle::uniform_disc(0.5)) * z) -
                     literal(0.2);
    const Expr psi = literal(c) + literal(d) * z + literal(e) * z * z;
    return WeierstrassData(eta, psi, lambda);
}

/// 20x20 grid of points in [-0.5, 0.5]^2.
inline std::vector<cplx> test_grid(int n = 20, double half = 0.5)
{
    std::vector<cplx> pts;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            pts.emplace_back(-half + 2 * half * i / (n - 1), -half + 2 * half * j / (n - 1));
    return pts;
}

}  // namespace fixture
