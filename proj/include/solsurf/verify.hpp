#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "solsurf/geom.hpp"
#include "solsurf/immersion.hpp"

namespace solsurf {

/// One named residual summary; pass <=> max < threshold. Non-finite samples fail.
struct Check {
    std::string name;
    double max = 0;
    double mean = 0;
    double threshold = 0;
    bool pass = false;
    std::size_t samples = 0;
};

Check make_check(std::string name, double threshold, const std::vector<double>& values);

class CheckSet {
public:
    void add(Check c) { items_.push_back(std::move(c)); }
    void add(std::string name, double threshold, const std::vector<double>& values)
    {
        add(make_check(std::move(name), threshold, values));
    }

    const std::vector<Check>& items() const { return items_; }
    const Check* find(std::string_view name) const;
    bool all_pass() const;

private:
    std::vector<Check> items_;
};

struct Thresholds {
    double gmc = 1e-4;
    double zero_curvature = 1e-4;
    double gauge = 1e-4;
    double gauge_unitarity = 1e-12;
    double gauge_invariants = 1e-8;
    double det_drift = 1e-6;
    double conformality = 1e-5;  ///< relative to e^u
    double h_estimate = 5e-3;
    double hyperboloid = 1e-6;
    double loop_period = 1e-6;
};

/// det-drift, hyperboloid (H3 only), conformality and H-estimate over a sampled patch.
/// H3 patches are compared against H = lambda, E3 patches against H = 0. Frames use
/// local stencils of step `frame_step`.
void patch_checks(const WeierstrassData& data, const SurfacePatch& patch, CheckSet& out, const Thresholds& t = {},
                  double frame_step = 1e-2);

/// GMC and zero-curvature residuals of `fields` at every valid grid point.
void field_checks(const SurfaceFields& fields, const SurfacePatch& patch, CheckSet& out, const Thresholds& t = {},
                  double h = 1e-3);

/// Gauge equivalence along straight paths from the base point to `ends`.
void gauge_checks(const WeierstrassData& data, const std::vector<cplx>& ends, CheckSet& out,
                  const Thresholds& t = {});

/// Real period and reduced monodromy around the closed loop `loop`.
LoopPeriod loop_check(const WeierstrassData& data, const std::vector<cplx>& loop, CheckSet& out,
                      const Thresholds& t = {});

/// Three interior points of the rectangle used as gauge path ends.
std::vector<cplx> gauge_path_ends(const Rect& r);
/// Closed counter-clockwise loop along the rectangle boundary starting at its lower-left corner.
std::vector<cplx> boundary_loop(const Rect& r);

}  // namespace solsurf
