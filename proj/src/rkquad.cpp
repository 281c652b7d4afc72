#include "alpha/rkquad.hpp"

#include <algorithm>
#include <cmath>

namespace alpha {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b*, for the embedded error estimate
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600;
constexpr double e3 = 500.0 / 1113 - 7571.0 / 16695;
constexpr double e4 = 125.0 / 192 - 393.0 / 640;
constexpr double e5 = -2187.0 / 6784 + 92097.0 / 339200;
constexpr double e6 = 11.0 / 84 - 187.0 / 2100;
constexpr double e7 = -1.0 / 40;

} // namespace

std::array<double, 2> integrate_pair(const std::function<void(double, double*)>& w,
                                     const QuadControls& ctl) {
    std::array<double, 2> y{0.0, 0.0};
    double p = 0.0;
    double h = std::min(ctl.initial_step, 1.0);
    double err_prev = 1.0;

    double k1[2], k3[2], k4[2], k5[2], k6[2], k7[2];
    w(0.0, k1);

    while (p < 1.0) {
        bool final_step = false;
        if (p + h >= 1.0) {
            h = 1.0 - p;
            final_step = true;
        }

        // integrand independent of y: stages are plain evaluations, and the
        // second stage carries zero weight in both the solution and the error
        w(p + c3 * h, k3);
        w(p + c4 * h, k4);
        w(p + c5 * h, k5);
        w(p + h, k6);
        k7[0] = k6[0]; // the FSAL stage coincides with stage 6 for pure quadrature
        k7[1] = k6[1];

        // the pair shares one scale: the second component vanishes at p = 0,
        // so controlling it against its own magnitude would stall the step
        double scale = 1e-300;
        for (int i = 0; i < 2; ++i)
            scale = std::max(scale, std::abs(y[i]) + std::abs(h * k1[i]));
        double err = 0.0;
        double dy[2];
        for (int i = 0; i < 2; ++i) {
            dy[i] = h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            const double ei =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            err = std::max(err, std::abs(ei) / scale);
        }
        err /= ctl.rel_tol;

        if (err <= 1.0) {
            p = final_step ? 1.0 : p + h;
            y[0] += dy[0];
            y[1] += dy[1];
            k1[0] = k7[0];
            k1[1] = k7[1];
            // PI controller
            const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.14) *
                               std::pow(std::max(err_prev, 1e-10), 0.08);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(err, 1e-10);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        if (h < ctl.min_step && p < 1.0)
            throw ContactError("quadrature step underflow at p = " + std::to_string(p) +
                               ", h = " + std::to_string(h) +
                               ": integrand effectively singular (contour contact)");
    }
    return y;
}

} // namespace alpha
