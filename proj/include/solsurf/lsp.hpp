#pragma once

#include <optional>
#include <vector>

#include "solsurf/detail/dp45.hpp"
#include "solsurf/geom.hpp"
#include "solsurf/mcore.hpp"

namespace solsurf {

/// Polygonal path through waypoints; the first waypoint is the base point.
struct PathSpec {
    std::vector<cplx> waypoints;
    std::vector<cplx> poles;  ///< declared poles to keep clear of
    double clearance = 1e-2;

    static PathSpec straight(cplx from, cplx to) { return PathSpec{{from, to}, {}, 1e-2}; }
    static PathSpec through(std::vector<cplx> points) { return PathSpec{std::move(points), {}, 1e-2}; }

    cplx start() const { return waypoints.front(); }
    cplx end() const { return waypoints.back(); }
    double length() const;
    /// PoleClearanceViolated when a declared pole is within `clearance` of a segment.
    void check_clearance() const;
};

enum class System { Full, Reduced };

struct Wavefunction {
    Mat2C value = Mat2C::identity();
    cplx at = 0.0;
    double lambda = 0.0;
    System which = System::Reduced;
};

struct IntegrateOptions {
    double tol = 1e-10;
    bool renormalize_det = false;
    double min_step = 1e-12;
};

/// lambda eta^2 [[psi, -1], [psi^2, -psi]]
Mat2C reduced_coefficient(const WeierstrassData& data, cplx z);
/// eta^2 [[psi, -1], [psi^2, -psi]], the lambda-free part.
Mat2C reduced_coefficient_unit(const WeierstrassData& data, cplx z);

/// Psi along `path` with Psi(path.start()) = I.
Wavefunction integrate_reduced(const WeierstrassData& data, const PathSpec& path, const IntegrateOptions& opt = {});
/// Continues `from` along the polygon from.at -> waypoints...
Wavefunction continue_reduced(const WeierstrassData& data, const Wavefunction& from, const std::vector<cplx>& waypoints,
                              const IntegrateOptions& opt = {});

/// Phi' = (U gamma' + V^dagger conj(gamma')) Phi with the H = lambda Lax pair of the data.
Wavefunction integrate_full(const WeierstrassData& data, const PathSpec& path, const IntegrateOptions& opt = {});
Wavefunction continue_full(const WeierstrassData& data, const Wavefunction& from, const std::vector<cplx>& waypoints,
                           const IntegrateOptions& opt = {});
/// General fields; IncompatibleSystem when the GMC residual near the path exceeds 1e-4.
Wavefunction integrate_full(const SurfaceFields& fields, const PathSpec& path, const IntegrateOptions& opt = {});

inline constexpr double kCompatibilityThreshold = 1e-4;

/// I + sum_{j<=order} lambda^j Theta_j(z), Theta_j the iterated integrals along z0 -> z.
Mat2C picard_series(const WeierstrassData& data, cplx z, int order, double tol = 1e-13);

/// Unitary gauge for the reduced system, branch of (eta/conj eta)^{1/2}
/// nearest to `branch_seed`.
Mat2C gauge_matrix(const WeierstrassData& data, cplx z, cplx branch_seed = 1.0);

/// Tracks the branch of the gauge by continuity along a sequence of points.
class GaugeTracker {
public:
    GaugeTracker(const WeierstrassData& data, cplx branch_seed = 1.0) : data_(&data), phase_(branch_seed) {}
    Mat2C at(cplx z);
    cplx phase() const { return phase_; }

private:
    const WeierstrassData* data_;
    cplx phase_;
};

struct GaugeReport {
    double reduced_residual = 0;   ///< max |d(Psi~) Psi~^{-1} - lambda eta^2 A|
    double antiholo_residual = 0;  ///< max |dbar(Psi~)|
    double unitarity = 0;          ///< max |M^dagger M - I|
    double trace_det_gap = 0;      ///< max of tr/det differences of Phi^dagger Phi vs Psi~^dagger Psi~
    int samples = 0;
};

/// Gauge check: along `path` forms Psi~ = M Phi M(z0)^{-1} and measures the
/// reduced-system residual by finite differences (step h) in x and y.
GaugeReport gauge_residual(const WeierstrassData& data, const PathSpec& path, int samples_per_segment = 8,
                           double h = 1e-4, const IntegrateOptions& opt = {1e-12});

}  // namespace solsurf
