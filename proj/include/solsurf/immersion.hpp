#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "solsurf/geom.hpp"
#include "solsurf/lsp.hpp"
#include "solsurf/mcore.hpp"

namespace solsurf {

using Vec3 = std::array<double, 3>;
using CLorentzVec = std::array<cplx, 4>;

/// F^sigma = (1/lambda) Phi^dagger Phi.
LorentzVec sym_immersion(const Wavefunction& phi, double lambda);
/// (Phi^dagger Phi - I) / lambda, the origin-shifted form whose lambda -> 0 limit is minimal.
LorentzVec shifted_immersion(const Wavefunction& phi, double lambda);

/// F = Re int (1/2 (1 - psi^2), i/2 (1 + psi^2), psi) eta^2 dz along the path.
Vec3 enneper_weierstrass(const WeierstrassData& data, const PathSpec& path, double tol = 1e-12);

/// Psi_1 = int eta^2 [[psi, -1], [psi^2, -psi]] dz along the path (first Picard term).
Mat2C first_order_term(const WeierstrassData& data, const PathSpec& path, double tol = 1e-12);
/// Hermitian components of Psi_1 + Psi_1^dagger, the lambda -> 0 limit of shifted_immersion.
LorentzVec clifford_limit(const WeierstrassData& data, const PathSpec& path, double tol = 1e-12);

/// Fixed similarity between the limit coordinates and the Weierstrass ones:
/// (X1, X2, X3) = (-2 F1, -2 F2, 2 F3).
Vec3 limit_from_enneper(const Vec3& f);
Vec3 enneper_from_limit(const LorentzVec& x);

enum class Target { H3, E3Limit, E3Direct };

std::string to_string(Target t);
Target target_from_string(const std::string& s);

struct Rect {
    double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
};

struct SampleOptions {
    int nx = 32;
    int ny = 32;
    double tol = 1e-8;
    unsigned threads = 0;  ///< 0: SOLSURF_THREADS or hardware concurrency
    bool renormalize_det = false;
};

struct SampleRecord {
    bool valid = false;
    std::string failure;
    double hyperboloid = 0;  ///< |(F|F) + 1/lambda^2|, H3 only
    double det_drift = 0;    ///< |det Psi - 1|
};

struct SurfacePatch {
    Target target = Target::H3;
    double lambda = 0;
    Rect domain;
    int nx = 0, ny = 0;
    cplx z0 = 0.0;
    std::vector<cplx> z;
    std::vector<LorentzVec> X;  ///< E3 targets keep x0 = 0 (E3Direct) or the small X0 (E3Limit)
    std::vector<Mat2C> wave;
    std::vector<SampleRecord> records;

    std::size_t index(int i, int j) const { return std::size_t(j) * nx + i; }
    bool valid(int i, int j) const { return records[index(i, j)].valid; }
    double hx() const { return nx > 1 ? (domain.re_max - domain.re_min) / (nx - 1) : 0.0; }
    double hy() const { return ny > 1 ? (domain.im_max - domain.im_min) / (ny - 1) : 0.0; }
    std::size_t valid_count() const;
    bool lorentzian() const { return target == Target::H3; }
};

unsigned resolve_threads(unsigned requested);

/// Grid sampling with row reuse: one sweep up the first column, then each row
/// continues from its left neighbour. Failing points are masked, not fatal.
SurfacePatch sample_surface(const WeierstrassData& data, const Rect& domain, Target target,
                            const SampleOptions& options = {});

struct FrameSample {
    LorentzVec F, N, F_x, F_y;
    CLorentzVec F_z;
    double u = 0;
    double H_est = 0;
    cplx Q_est = 0;
    double conformality = 0;  ///< |(F_z|F_z)|
    double normal_defect = 0; ///< max(|(N|N) - 1|, |(F|N)|, |(F_z|N)|) relative
    int raw_sign = 1;         ///< N relative to the cross product of F_x, F_y (and F in H3)
};

/// Fourth-order central differences at interior point (i, j); needs a two-cell margin.
/// `orient` fixes the sign of N by continuity; without it (F_zzbar|N) > 0.
FrameSample frame_and_curvature(const SurfacePatch& patch, int i, int j, const LorentzVec* orient = nullptr);

/// Frames at every interior point whose stencil is valid, orientation propagated row-major.
std::vector<std::optional<FrameSample>> frame_field(const SurfacePatch& patch);

/// Frame at sample k from a 5x5 stencil of step h, each stencil point reached by
/// short integrations from the stored sample. Independent of the grid spacing.
FrameSample local_frame(const WeierstrassData& data, const SurfacePatch& patch, std::size_t k, double h = 1e-2,
                        double tol = 1e-12);

/// local_frame at every valid sample; the first frame has (F_zzbar|N) > 0 and the
/// rest share its orientation relative to the parametrization.
std::vector<std::optional<FrameSample>> local_frame_field(const WeierstrassData& data, const SurfacePatch& patch,
                                                          double h = 1e-2, double tol = 1e-12);

struct LoopPeriod {
    Vec3 real_period{};      ///< Re of the Weierstrass integral around the loop
    double monodromy = 0;    ///< |Psi(loop) - I|
};

LoopPeriod loop_period(const WeierstrassData& data, const std::vector<cplx>& loop, double tol = 1e-10);

}  // namespace solsurf
