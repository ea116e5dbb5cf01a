#include "solsurf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solsurf/error.hpp"
#include "solsurf/lsp.hpp"

namespace solsurf {

Check make_check(std::string name, double threshold, const std::vector<double>& values)
{
    Check c;
    c.name = std::move(name);
    c.threshold = threshold;
    c.samples = values.size();
    if (values.empty()) {
        c.max = c.mean = std::numeric_limits<double>::quiet_NaN();
        return c;
    }
    double sum = 0;
    bool finite = true;
    c.max = values.front();
    for (double v : values) {
        finite = finite && std::isfinite(v);
        c.max = std::max(c.max, v);
        sum += v;
    }
    if (!finite) {
        c.max = c.mean = std::numeric_limits<double>::quiet_NaN();
        return c;
    }
    c.mean = sum / double(values.size());
    c.pass = c.max < threshold;
    return c;
}

const Check* CheckSet::find(std::string_view name) const
{
    for (const auto& c : items_)
        if (c.name == name)
            return &c;
    return nullptr;
}

bool CheckSet::all_pass() const
{
    return std::all_of(items_.begin(), items_.end(), [](const Check& c) { return c.pass; });
}

void patch_checks(const WeierstrassData& data, const SurfacePatch& patch, CheckSet& out, const Thresholds& t,
                  double frame_step)
{
    std::vector<double> drift, hyper;
    for (const auto& r : patch.records) {
        if (!r.valid)
            continue;
        drift.push_back(r.det_drift);
        hyper.push_back(r.hyperboloid);
    }
    if (patch.target != Target::E3Direct)
        out.add("det-drift", t.det_drift, drift);
    if (patch.target == Target::H3)
        out.add("hyperboloid", t.hyperboloid, hyper);

    const double H = patch.target == Target::H3 ? patch.lambda : 0.0;
    std::vector<double> conf, hest;
    for (const auto& f : local_frame_field(data, patch, frame_step)) {
        if (!f)
            continue;
        conf.push_back(f->conformality / std::exp(f->u));
        hest.push_back(std::abs(f->H_est - H));
    }
    out.add("conformality", t.conformality, conf);
    out.add("h-estimate", t.h_estimate, hest);
}

void field_checks(const SurfaceFields& fields, const SurfacePatch& patch, CheckSet& out, const Thresholds& t, double h)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> gmc, zc;
    for (std::size_t k = 0; k < patch.z.size(); ++k) {
        if (!patch.records[k].valid)
            continue;
        const cplx z = patch.z[k];
        try {
            gmc.push_back(gmc_residual(fields, z, h).max_abs());
        } catch (const Error&) {
            gmc.push_back(nan);
        }
        try {
            zc.push_back(zero_curvature_residual(fields, z, h).max_norm());
        } catch (const Error&) {
            zc.push_back(nan);
        }
    }
    out.add("gmc", t.gmc, gmc);
    out.add("zero-curvature", t.zero_curvature, zc);
}

void gauge_checks(const WeierstrassData& data, const std::vector<cplx>& ends, CheckSet& out, const Thresholds& t)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> red, unit, inv;
    for (cplx end : ends) {
        try {
            const GaugeReport g = gauge_residual(data, PathSpec::straight(data.z0(), end));
            red.push_back(std::max(g.reduced_residual, g.antiholo_residual));
            unit.push_back(g.unitarity);
            inv.push_back(g.trace_det_gap);
        } catch (const Error&) {
            red.push_back(nan);
            unit.push_back(nan);
            inv.push_back(nan);
        }
    }
    out.add("gauge-equivalence", t.gauge, red);
    out.add("gauge-unitarity", t.gauge_unitarity, unit);
    out.add("gauge-invariants", t.gauge_invariants, inv);
}

LoopPeriod loop_check(const WeierstrassData& data, const std::vector<cplx>& loop, CheckSet& out, const Thresholds& t)
{
    LoopPeriod lp;
    try {
        lp = loop_period(data, loop);
        const auto& p = lp.real_period;
        out.add("loop-period", t.loop_period, {std::hypot(p[0], p[1], p[2]), lp.monodromy});
    } catch (const Error&) {
        out.add("loop-period", t.loop_period, {std::numeric_limits<double>::quiet_NaN()});
        lp.monodromy = std::numeric_limits<double>::quiet_NaN();
    }
    return lp;
}

std::vector<cplx> gauge_path_ends(const Rect& r)
{
    auto at = [&](double s, double u) {
        return cplx(r.re_min + s * (r.re_max - r.re_min), r.im_min + u * (r.im_max - r.im_min));
    };
    return {at(0.8, 0.7), at(0.2, 0.85), at(0.35, 0.15)};
}

std::vector<cplx> boundary_loop(const Rect& r)
{
    return {cplx(r.re_min, r.im_min), cplx(r.re_max, r.im_min), cplx(r.re_max, r.im_max), cplx(r.re_min, r.im_max),
            cplx(r.re_min, r.im_min)};
}

}  // namespace solsurf
