#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracle {

using alpha::Contour;
using alpha::SegmentGeometry;
using alpha::Vec2;

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    // the tolerance is deliberately not halved on recursion; halving fights
    // round-off near integrable endpoint singularities and explodes the tree
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double circumscribed_circle_curvature(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double twice_area = cross(b - a, c - a);
    const double la = dist(b, c), lb = dist(a, c), lc = dist(a, b);
    if (twice_area == 0.0) return 0.0;
    // R = la lb lc / (2 |twice_area|), kappa = 1/R signed by the turn
    return 2.0 * twice_area / (la * lb * lc);
}

namespace {

double eta(const SegmentGeometry& s, double p) {
    return ((s.gamma * p + s.beta) * p + s.mu) * p;
}

} // namespace

SingularReference singular_reference(const SegmentGeometry& s, double a, double eps) {
    auto dist_p = [&](double p) {
        const Vec2 q = p * s.t + eta(s, p) * s.n;
        return std::pow(norm2(q), -0.5 * a);
    };
    auto f1 = [&](double p) { return dist_p(p); };
    auto f2 = [&](double p) { return (2.0 * s.beta + 3.0 * s.gamma * p) * p * dist_p(p); };

    SingularReference r;
    const double tail =
        std::pow(eps, 1.0 - a) / ((1.0 - a) * std::pow(s.d, a) *
                                  std::pow(1.0 + s.mu * s.mu, 0.5 * a));
    r.i1 = adaptive_simpson(f1, eps, 1.0, 1e-12) + tail;
    r.i2 = adaptive_simpson(f2, eps, 1.0, 1e-12);
    return r;
}

SingularReference singular_reference_right(const SegmentGeometry& s, double a, double eps) {
    // integrate in p' = 1 - p; the distance is measured to the right endpoint
    const Vec2 right = s.t + eta(s, 1.0) * s.n; // equals t since eta(1) = 0
    auto dist_p = [&](double pp) {
        const double p = 1.0 - pp;
        const Vec2 q = p * s.t + eta(s, p) * s.n - right;
        return std::pow(norm2(q), -0.5 * a);
    };
    auto f1 = [&](double pp) { return dist_p(pp); };
    auto f2 = [&](double pp) {
        const double p = 1.0 - pp;
        return (2.0 * s.beta + 3.0 * s.gamma * p) * p * dist_p(pp);
    };
    const double mu_t = s.mu + 2.0 * s.beta + 3.0 * s.gamma;
    const double tail = std::pow(eps, 1.0 - a) /
                        ((1.0 - a) * std::pow(s.d, a) * std::pow(1.0 + mu_t * mu_t, 0.5 * a));
    SingularReference r;
    r.i1 = adaptive_simpson(f1, eps, 1.0, 1e-12) + tail;
    // unlike case 1, the i2 numerator does not vanish at this endpoint, so
    // its singular tail carries the same leading factor
    r.i2 = adaptive_simpson(f2, eps, 1.0, 1e-12) + (2.0 * s.beta + 3.0 * s.gamma) * tail;
    return r;
}

SingularReference offcurve_reference(const SegmentGeometry& s, const Vec2& base,
                                     const Vec2& target, double a) {
    const Vec2 r0 = base - target;
    auto dist_p = [&](double p) {
        const Vec2 q = r0 + p * s.t + eta(s, p) * s.n;
        return std::pow(norm2(q), -0.5 * a);
    };
    SingularReference r;
    r.i1 = adaptive_simpson([&](double p) { return dist_p(p); }, 0.0, 1.0, 1e-13);
    r.i2 = adaptive_simpson(
        [&](double p) { return (2.0 * s.beta + 3.0 * s.gamma * p) * p * dist_p(p); }, 0.0, 1.0,
        1e-13);
    return r;
}

double circle_vy_quadrature(double a) {
    // (-1/2pi) Int_0^{2pi} cos(th) (2 sin(th/2))^{-a} dth via th = 2 phi.
    // Both endpoints carry integrable phi^{-a} singularities with cos(2 phi)
    // approaching 1; the eps-split tails are exact to O(eps^{3-a}).
    auto f = [&](double phi) {
        return std::cos(2.0 * phi) * std::pow(2.0 * std::sin(phi), -a);
    };
    const double eps = 1e-10;
    const double body = adaptive_simpson(f, eps, std::numbers::pi - eps, 1e-13);
    const double tails = 2.0 * std::pow(2.0, -a) * std::pow(eps, 1.0 - a) / (1.0 - a);
    return -2.0 * (body + tails) / (2.0 * std::numbers::pi);
}

std::vector<double> naive_binomial_composition(const std::vector<double>& u, double e,
                                               int order) {
    const int len = order + 1;
    std::vector<double> result(len, 0.0), upow(len, 0.0), tmp(len, 0.0);
    result[0] = 1.0;
    upow[0] = 1.0;
    double binom = 1.0;
    for (int k = 1; k <= order; ++k) {
        // upow *= u (truncated)
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (int i = 0; i < len; ++i) {
            if (upow[i] == 0.0) continue;
            for (std::size_t j = 0; j < u.size() && i + static_cast<int>(j) < len; ++j)
                tmp[i + j] += upow[i] * u[j];
        }
        upow = tmp;
        binom *= (e - (k - 1)) / k;
        for (int i = 0; i < len; ++i) result[i] += binom * upow[i];
    }
    return result;
}

double brute_min_distance(const Contour& a, const Contour& b, int samples_per_segment) {
    const auto sa = alpha::compute_segments(a);
    const auto sb = alpha::compute_segments(b);
    std::vector<Vec2> pa, pb;
    for (int i = 0; i < a.size(); ++i)
        for (int s = 0; s < samples_per_segment; ++s)
            pa.push_back(alpha::eval_segment(sa[i], a.nodes[i], (s + 0.5) / samples_per_segment));
    for (int i = 0; i < b.size(); ++i)
        for (int s = 0; s < samples_per_segment; ++s)
            pb.push_back(alpha::eval_segment(sb[i], b.nodes[i], (s + 0.5) / samples_per_segment));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pa)
        for (const auto& q : pb) best = std::min(best, norm2(p - q));
    return std::sqrt(best);
}

double hausdorff_distance(const Contour& a, const Contour& b, int samples_per_segment) {
    const auto sa = alpha::compute_segments(a);
    const auto sb = alpha::compute_segments(b);
    double worst = 0.0;
    for (int i = 0; i < a.size(); ++i)
        for (int s = 0; s < samples_per_segment; ++s) {
            const Vec2 p =
                alpha::eval_segment(sa[i], a.nodes[i], static_cast<double>(s) / samples_per_segment);
            worst = std::max(worst, alpha::point_contour_distance(p, b).distance);
        }
    for (int i = 0; i < b.size(); ++i)
        for (int s = 0; s < samples_per_segment; ++s) {
            const Vec2 p =
                alpha::eval_segment(sb[i], b.nodes[i], static_cast<double>(s) / samples_per_segment);
            worst = std::max(worst, alpha::point_contour_distance(p, a).distance);
        }
    return worst;
}

} // namespace oracle
