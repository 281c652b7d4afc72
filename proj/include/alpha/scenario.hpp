#ifndef ALPHA_SCENARIO_HPP
#define ALPHA_SCENARIO_HPP

#include "alpha/config.hpp"
#include "alpha/evolution.hpp"
#include "alpha/kernel.hpp"

namespace alpha {

// Uniformly sampled circle/ellipse boundary, counterclockwise, node 1 at
// angle 0 relative to the center.
Contour make_circle(const Vec2& center, double radius, int n, double theta, int id);
Contour make_ellipse(const Vec2& center, double semi_a, double semi_b, int n, double theta,
                     int id);

RedistributionParams redistribution_from(const RunConfig& cfg);
KernelParams kernel_from(const RunConfig& cfg);

// Builds the initial PatchSystem for a named scenario. Contours get their
// initial node counts from one redistribution pass at the configured nu.
PatchSystem build_scenario(const RunConfig& cfg);

} // namespace alpha

#endif
