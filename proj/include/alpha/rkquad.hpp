#ifndef ALPHA_RKQUAD_HPP
#define ALPHA_RKQUAD_HPP

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

namespace alpha {

// Raised when the adaptive quadrature underflows its minimum step. For the
// contour kernel this signals that the target has effectively touched the
// integration segment.
struct ContactError : std::runtime_error {
    explicit ContactError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadControls {
    double rel_tol = 1e-9;
    double min_step = 1e-14;
    double initial_step = 0.05;
};

// Integrates dY/dp = w(p) over [0,1] with Y(0) = 0 using the embedded
// Dormand-Prince 5(4) pair and PI step-size control. The integrand is a pair
// (the two kernel integrals share every evaluation point).
std::array<double, 2> integrate_pair(const std::function<void(double, double*)>& w,
                                     const QuadControls& ctl);

} // namespace alpha

#endif
