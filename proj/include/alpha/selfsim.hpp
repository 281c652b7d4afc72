#ifndef ALPHA_SELFSIM_HPP
#define ALPHA_SELFSIM_HPP

#include <utility>

#include "alpha/evolution.hpp"
#include "alpha/kernel.hpp"

namespace alpha {

// Change of variables between physical and self-similar coordinates:
//   x - x* = (t* - t)^delta (y - y*),   tau = -log(t* - t),   y* = 0.
// x_star_at_instant is the user-supplied anchor of the scaling function at
// the instant being rescaled.
struct RescaleMap {
    double t_star = 0.0;
    Vec2 x_star_at_instant;
    double delta = 0.0; // 1/alpha
};

// Discrete right-hand side of the rescaled equation,
//   F_j = delta y_j + f_j(y_j) - f_j(0),
// with the f_j(0) term supplied once per evaluation pass. At alpha = 1 the
// normal-projected variant is used. Throws if the origin evaluation hits a
// contour.
Vec2 rescaled_velocity(const PatchSystem& sys, const StageGeometry& geo, const NodeRef& target,
                       const Vec2& f_origin);
Vec2 rescaled_velocity(const PatchSystem& sys, const NodeRef& target);

// f_j(0, ...): the shared origin term of the rescaled field.
Vec2 origin_velocity(const PatchSystem& sys, const StageGeometry& geo);

struct WedgeSpec {
    double x_max = 20.0;       // wedge truncation of interest (apex zone)
    double rotation = 0.0;     // rigid rotation about the origin
    double perturbation = 0.0; // apex gap amplitude; >0 separates, 0 exact wedge, <0 refused
    double shift = 0.0;        // opposite horizontal offsets of the two curves
    double apex_spacing = 0.01;    // finest node spacing at the apex
    double grading_ratio = 1.05;   // geometric node grading away from the apex
    double extension = 4096.0;     // arms continue along the asymptote to extension*x_max
    double closure_distance = 2.0; // closure rectangle distance, in units of the arm extent
};

// The stationary pair Y1 = (x,|x|), Y2 = (x,-|x|) truncated and closed far
// from the origin: the arms continue along the asymptote with geometric
// grading out to extension*x_max (the long-range kernel makes the apex-region
// field sensitive to truncation, see docs/ledger), then a far rectangle
// closes each curve behind its wedge. Positive perturbation rounds the apex
// into y = +-sqrt(x^2 + A^2), separating the curves by 2A.
std::pair<Contour, Contour> make_wedge(const WedgeSpec& spec);

// y = (t*-t)^{-delta} (x - x*), tau = -log(t*-t). Throws if t >= t*.
std::pair<std::vector<Contour>, double> rescale_physical_to_selfsim(
    const std::vector<Contour>& contours, double t, const RescaleMap& map);

// Inverse transform: x = x* + e^{-delta tau} y, t = t* - e^{-tau}.
std::pair<std::vector<Contour>, double> rescale_selfsim_to_physical(
    const std::vector<Contour>& contours, double tau, const RescaleMap& map);

// Runs rk4_step with -dt_mag, redistributing each step; used for
// unstable-subspace experiments around the wedge fixed point.
PatchSystem backward_evolve(PatchSystem sys, int steps, double dt_mag,
                            const RedistributionParams& redist);

// Max distance from the arm nodes (|y| close to |x|) to the exact wedge set
// {y = +-|x|}, restricted to |x| <= x_limit. Diagnostic for the fixed-point
// experiments.
double wedge_deviation(const Contour& c, bool upper, double x_limit);

} // namespace alpha

#endif
