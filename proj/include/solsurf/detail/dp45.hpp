#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "solsurf/error.hpp"
#include "solsurf/mcore.hpp"

namespace solsurf::detail {

struct Dp45Options {
    double tol = 1e-10;
    double min_step = 1e-12;   ///< relative to the unit parameter interval
    long max_steps = 2'000'000;
    bool renormalize_det = false;
};

struct Dp45Stats {
    long accepted = 0;
    long rejected = 0;
};

// Dormand-Prince 5(4) for Y' = f(t) Y on t in [0, 1]. f may throw solsurf::Error
// (DomainError, PoleOrOverflow) at stage points; the step is then shrunk.
template <class F>
Mat2C dp45_linear(F&& f, Mat2C y, const Dp45Options& opt, Dp45Stats* stats = nullptr)
{
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    Dp45Stats local;
    Dp45Stats& st = stats ? *stats : local;
    double t = 0.0;
    double h = 0.05;
    std::optional<Mat2C> k1_cache;
    std::string last_failure;

    while (t < 1.0) {
        if (st.accepted + st.rejected > opt.max_steps)
            throw Error(ErrorKind::StepUnderflow, "step budget exhausted at t=" + std::to_string(t));
        if (h < opt.min_step)
            throw Error(ErrorKind::StepUnderflow,
                        "step size underflow at t=" + std::to_string(t) +
                            (last_failure.empty() ? std::string() : " (" + last_failure + ")"));
        h = std::min(h, 1.0 - t);
        const bool last = (t + h >= 1.0);

        Mat2C k1, k2, k3, k4, k5, k6, k7, y5;
        double err = 0.0;
        bool ok = true;
        try {
            k1 = k1_cache ? *k1_cache : f(t) * y;
            k2 = f(t + c2 * h) * (y + (h * a21) * k1);
            k3 = f(t + c3 * h) * (y + h * (a31 * k1 + a32 * k2));
            k4 = f(t + c4 * h) * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            k5 = f(t + c5 * h) * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            k6 = f(t + h) * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            k7 = f(last ? 1.0 : t + h) * y5;
            const Mat2C e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double scale = std::max(1.0, std::max(y.max_norm(), y5.max_norm()));
            err = e.max_norm() / (opt.tol * scale);
            if (!std::isfinite(err) || !std::isfinite(y5.max_norm()))
                ok = false;
        } catch (const Error& ex) {
            if (ex.kind() != ErrorKind::DomainError && ex.kind() != ErrorKind::PoleOrOverflow)
                throw;
            last_failure = ex.what();
            ok = false;
        }
        if (!ok) {
            ++st.rejected;
            k1_cache.reset();
            h *= 0.25;
            continue;
        }
        if (err <= 1.0) {
            ++st.accepted;
            t = last ? 1.0 : t + h;
            y = y5;
            if (opt.renormalize_det) {
                const cplx d = y.det();
                if (d != 0.0)
                    y = (1.0 / std::sqrt(d)) * y;
                k1_cache.reset();
            } else {
                k1_cache = k7;
            }
            const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= grow;
        } else {
            ++st.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    return y;
}

}  // namespace solsurf::detail
