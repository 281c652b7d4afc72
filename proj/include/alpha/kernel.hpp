#ifndef ALPHA_KERNEL_HPP
#define ALPHA_KERNEL_HPP

#include <optional>
#include <vector>

#include "alpha/geometry.hpp"
#include "alpha/series.hpp"
#include "alpha/vec2.hpp"

namespace alpha {

// Numerical controls of the contour-integral kernel. The physical parameters
// (alpha, per-contour strengths theta_k) live on PatchSystem and Contour.
struct KernelParams {
    double far_threshold = 5.0; // far path considered when d_x >= R_far * d_i (1 + |mu_i|)
    int series_order = 10;
    double near_quad_tol = 1e-9;
    double near_min_step = 1e-14;
};

void validate_kernel_params(const KernelParams& p);

enum class Mode { physical, selfsimilar };

// The state of Eq.-of-motion integration: the contour list plus the equation
// parameters. In selfsimilar mode `time` is the pseudo-time tau and the
// collapse point is pinned at the origin.
struct PatchSystem {
    double alpha = 0.7;
    double delta = 1.0 / 0.7; // 1/alpha, kept consistent by make_system
    Mode mode = Mode::physical;
    double time = 0.0; // t (physical) or tau (selfsimilar)
    std::vector<Contour> contours;
    KernelParams kernel;
    std::optional<Vec2> tracer; // optional material point advected with the flow

    const Contour* find_contour(int id) const {
        for (const auto& c : contours)
            if (c.id == id) return &c;
        return nullptr;
    }
};

PatchSystem make_system(double alpha, Mode mode, std::vector<Contour> contours,
                        KernelParams kernel = {});
void validate_system(const PatchSystem& s);

// theta_1 = theta * c_alpha converts a physical scalar jump into the equation
// coefficient; c_alpha = Gamma(alpha/2) / (2^{1-alpha} Gamma((2-alpha)/2)).
// Provided as a helper only, never applied implicitly.
double c_alpha(double alpha);

struct SeriesCoefficients {
    std::vector<double> c; // c[0] == 1 exactly

    int order() const { return static_cast<int>(c.size()) - 1; }
};

// Coefficients c_n of the Maclaurin expansion in p of
//   (1 + (beta^2 p^2 + gamma^2 p^4 + 2 mu beta p + 2 mu gamma p^2
//        + 2 beta gamma p^3) / (1 + mu^2))^{-alpha/2}
// used by the endpoint-singular integrals.
SeriesCoefficients singular_series(const SegmentGeometry& seg, double alpha, int order);

// Far-field coefficients g_n with the term-by-term integration over [0,1]
// folded in (g_n = a_n/(n+1) for the raw composition coefficients a_n), so
// that I1 = d_x^{-alpha} * sum g_n. g[0] == 1 exactly.
SeriesCoefficients far_series(const SegmentGeometry& seg, const Vec2& base, const Vec2& target,
                              double alpha, int order);

struct IntegralPair {
    double i1 = 0.0; // integral of dp / |x_i(p) - target|^alpha
    double i2 = 0.0; // integral of (2 beta p + 3 gamma p^2) dp / |...|^alpha
};

// Target at the segment's left endpoint (p = 0 singularity). I1 needs
// alpha < 1; the alpha = 1 projected path never requests it.
IntegralPair segment_integral_case1(const SegmentGeometry& seg, double alpha, int order);

// Target at the segment's right endpoint (p = 1 singularity), handled by the
// substitution p' = 1 - p with mu~ = mu + 2 beta + 3 gamma, beta~ = -beta - 3 gamma,
// gamma~ = gamma, then mapped back to the original numerator.
IntegralPair segment_integral_case2(const SegmentGeometry& seg, double alpha, int order);

// Far target: series expansion of the exactly-expanded squared distance.
// Caller must have accepted the series via the tail guard.
IntegralPair segment_integral_far(const SegmentGeometry& seg, const Vec2& base,
                                  const Vec2& target, double alpha, int order);

// Near target: adaptive 5th-order embedded Runge-Kutta quadrature. The
// squared-distance polynomial is expanded to monomial coefficients first and
// evaluated by nested multiplication.
IntegralPair segment_integral_near(const SegmentGeometry& seg, const Vec2& base,
                                   const Vec2& target, double alpha, const KernelParams& kp);

// Per-evaluation-pass immutable geometry snapshot; segments and curvatures
// are computed once per contour and shared by every target.
struct StageGeometry {
    std::vector<std::vector<SegmentGeometry>> segs; // [contour index][segment]

    explicit StageGeometry(const PatchSystem& sys);
};

// Full node velocity f_j (Eq. of motion right-hand side, physical variables).
// target_location identifies the node so the two touching segments take the
// endpoint-singular paths; segments elsewhere dispatch far/near. alpha < 1.
Vec2 node_velocity(const PatchSystem& sys, const StageGeometry& geo, const Vec2& target,
                   const std::optional<NodeRef>& target_location);
Vec2 node_velocity(const PatchSystem& sys, const Vec2& target,
                   const std::optional<NodeRef>& target_location);

// Velocity projected on the unit node normal, valid for any alpha in (0,1].
// The divergent tangential self-term is skipped; everything else is computed
// fully and projected.
Vec2 normal_velocity(const PatchSystem& sys, const StageGeometry& geo, const NodeRef& target);
Vec2 normal_velocity(const PatchSystem& sys, const NodeRef& target);

// Off-contour field velocity; finite for any alpha in (0,1] as long as the
// target does not lie on a contour interior. Targets coinciding with a node
// take the endpoint-singular paths (finite only for alpha < 1).
Vec2 field_velocity(const PatchSystem& sys, const StageGeometry& geo, const Vec2& target);

} // namespace alpha

#endif
