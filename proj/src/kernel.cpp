#include "alpha/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "alpha/rkquad.hpp"

namespace alpha {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Relative slack for recognising a target that coincides with a segment
// endpoint (touching contours meet node-on-node).
constexpr double kCoincideTol = 1e-12;
// Acceptance guard for the far series: the last retained coefficient must be
// negligible against the series mass, otherwise the near path is used.
constexpr double kFarTailFraction = 1e-10;

struct SingularCoeffs {
    double u[5]; // u[1..4]; u[0] unused
    double one_plus_mu2;
};

SingularCoeffs singular_poly(double mu, double beta, double gamma) {
    SingularCoeffs s;
    s.one_plus_mu2 = 1.0 + mu * mu;
    s.u[0] = 0.0;
    s.u[1] = 2.0 * mu * beta / s.one_plus_mu2;
    s.u[2] = (beta * beta + 2.0 * mu * gamma) / s.one_plus_mu2;
    s.u[3] = 2.0 * beta * gamma / s.one_plus_mu2;
    s.u[4] = gamma * gamma / s.one_plus_mu2;
    return s;
}

// I1-type sum for a p=0 endpoint singularity with general eta coefficients.
double endpoint_i1(const TruncSeries& c, double d, double one_plus_mu2, double alpha) {
    double sum = 0.0;
    for (int n = c.n - 1; n >= 0; --n) sum += c[n] / (n - alpha + 1.0);
    return std::pow(d, -alpha) * std::pow(one_plus_mu2, -0.5 * alpha) * sum;
}

// I2-type sum with numerator (b1 p + b2 p^2); the case-1 numerator uses
// (2 beta, 3 gamma) and the case-2 tilde form reuses it with tilde values.
double endpoint_i2(const TruncSeries& c, double d, double one_plus_mu2, double alpha, double b1,
                   double b2) {
    double sum = 0.0;
    for (int n = c.n - 1; n >= 0; --n)
        sum += c[n] * (b1 / (n - alpha + 2.0) + b2 / (n - alpha + 3.0));
    return std::pow(d, -alpha) * std::pow(one_plus_mu2, -0.5 * alpha) * sum;
}

struct TildeCoeffs {
    double mu, beta, gamma;
};

TildeCoeffs tilde(const SegmentGeometry& seg) {
    return {seg.mu + 2.0 * seg.beta + 3.0 * seg.gamma, -seg.beta - 3.0 * seg.gamma, seg.gamma};
}

// Exactly expanded squared distance |target - x_i(p)|^2 as monomial
// coefficients in p. r0 = x_i - target.
struct DistPoly {
    double d[7];
};

DistPoly distance_poly(const SegmentGeometry& seg, const Vec2& base, const Vec2& target) {
    const Vec2 r0 = base - target;
    const double dt = dot(r0, seg.t);
    const double dn = dot(r0, seg.n);
    const double d2 = seg.d * seg.d;
    const double mu = seg.mu, beta = seg.beta, gamma = seg.gamma;
    DistPoly q;
    q.d[0] = norm2(r0);
    q.d[1] = 2.0 * (dt + mu * dn);
    q.d[2] = 2.0 * beta * dn + d2 * (1.0 + mu * mu);
    q.d[3] = 2.0 * gamma * dn + 2.0 * d2 * mu * beta;
    q.d[4] = d2 * (beta * beta + 2.0 * mu * gamma);
    q.d[5] = 2.0 * d2 * beta * gamma;
    q.d[6] = d2 * gamma * gamma;
    return q;
}

// Raw far-field composition coefficients a_n of (1+v(p))^{-alpha/2}.
TruncSeries far_raw_series(const SegmentGeometry& seg, const Vec2& base, const Vec2& target,
                           double alpha, int order) {
    const DistPoly q = distance_poly(seg, base, target);
    const double inv_dx2 = 1.0 / q.d[0];
    double v[7];
    v[0] = 0.0;
    for (int j = 1; j <= 6; ++j) v[j] = q.d[j] * inv_dx2;
    return binomial_composition(v, 6, -0.5 * alpha, order);
}

bool far_tail_ok(const TruncSeries& a) {
    double mass = 0.0;
    const int last = a.n - 1;
    for (int n = 0; n <= last; ++n) mass += std::abs(a[n]) / (n + 1.0);
    return std::abs(a[last]) / (last + 1.0) <= kFarTailFraction * mass;
}

IntegralPair far_from_raw(const TruncSeries& a, const SegmentGeometry& seg, double dx2,
                          double alpha) {
    double s1 = 0.0, s2 = 0.0;
    for (int n = a.n - 1; n >= 0; --n) {
        s1 += a[n] / (n + 1.0);
        s2 += a[n] * (2.0 * seg.beta / (n + 2.0) + 3.0 * seg.gamma / (n + 3.0));
    }
    const double pref = std::pow(dx2, -0.5 * alpha);
    return {pref * s1, pref * s2};
}

} // namespace

void validate_kernel_params(const KernelParams& p) {
    if (!(p.far_threshold > 1.0)) throw std::invalid_argument("far_threshold must exceed 1");
    if (p.series_order < 2 || p.series_order + 1 > kMaxSeriesLen)
        throw std::invalid_argument("series_order out of range");
    if (!(p.near_quad_tol > 0.0)) throw std::invalid_argument("near_quad_tol must be positive");
}

PatchSystem make_system(double alpha, Mode mode, std::vector<Contour> contours,
                        KernelParams kernel) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0,1]");
    PatchSystem s;
    s.alpha = alpha;
    s.delta = 1.0 / alpha;
    s.mode = mode;
    s.contours = std::move(contours);
    s.kernel = kernel;
    validate_system(s);
    return s;
}

void validate_system(const PatchSystem& s) {
    if (!(s.alpha > 0.0 && s.alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0,1]");
    if (std::abs(s.delta * s.alpha - 1.0) > 1e-15)
        throw std::invalid_argument("delta must equal 1/alpha");
    validate_kernel_params(s.kernel);
    for (const auto& c : s.contours) validate_contour(c);
}

double c_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0,1]");
    return std::tgamma(0.5 * alpha) /
           (std::pow(2.0, 1.0 - alpha) * std::tgamma(0.5 * (2.0 - alpha)));
}

SeriesCoefficients singular_series(const SegmentGeometry& seg, double alpha, int order) {
    const SingularCoeffs s = singular_poly(seg.mu, seg.beta, seg.gamma);
    const TruncSeries h = binomial_composition(s.u, 4, -0.5 * alpha, order);
    SeriesCoefficients out;
    out.c.assign(h.c.begin(), h.c.begin() + h.n);
    return out;
}

SeriesCoefficients far_series(const SegmentGeometry& seg, const Vec2& base, const Vec2& target,
                              double alpha, int order) {
    const TruncSeries a = far_raw_series(seg, base, target, alpha, order);
    SeriesCoefficients out;
    out.c.resize(a.n);
    for (int n = 0; n < a.n; ++n) out.c[n] = a[n] / (n + 1.0);
    return out;
}

IntegralPair segment_integral_case1(const SegmentGeometry& seg, double alpha, int order) {
    if (!(alpha < 1.0))
        throw std::domain_error("case-1 I1 diverges at alpha = 1; use the projected path");
    const SingularCoeffs s = singular_poly(seg.mu, seg.beta, seg.gamma);
    const TruncSeries c = binomial_composition(s.u, 4, -0.5 * alpha, order);
    IntegralPair r;
    r.i1 = endpoint_i1(c, seg.d, s.one_plus_mu2, alpha);
    r.i2 = endpoint_i2(c, seg.d, s.one_plus_mu2, alpha, 2.0 * seg.beta, 3.0 * seg.gamma);
    return r;
}

IntegralPair segment_integral_case2(const SegmentGeometry& seg, double alpha, int order) {
    if (!(alpha < 1.0))
        throw std::domain_error("case-2 I1 diverges at alpha = 1; use the projected path");
    const TildeCoeffs tc = tilde(seg);
    const SingularCoeffs s = singular_poly(tc.mu, tc.beta, tc.gamma);
    const TruncSeries c = binomial_composition(s.u, 4, -0.5 * alpha, order);
    const double i1 = endpoint_i1(c, seg.d, s.one_plus_mu2, alpha);
    const double i2t = endpoint_i2(c, seg.d, s.one_plus_mu2, alpha, 2.0 * tc.beta, 3.0 * tc.gamma);
    // numerator 2 beta p + 3 gamma p^2 = (mu~ - mu) + 2 beta~ p' + 3 gamma~ p'^2
    return {i1, (tc.mu - seg.mu) * i1 + i2t};
}

IntegralPair segment_integral_far(const SegmentGeometry& seg, const Vec2& base,
                                  const Vec2& target, double alpha, int order) {
    const TruncSeries a = far_raw_series(seg, base, target, alpha, order);
    return far_from_raw(a, seg, norm2(base - target), alpha);
}

IntegralPair segment_integral_near(const SegmentGeometry& seg, const Vec2& base,
                                   const Vec2& target, double alpha, const KernelParams& kp) {
    const DistPoly q = distance_poly(seg, base, target);
    const double half_alpha = 0.5 * alpha;
    const double beta2 = 2.0 * seg.beta, gamma3 = 3.0 * seg.gamma;
    auto w = [&](double p, double* out) {
        // nested multiplication of the pre-expanded monomial coefficients
        double poly = q.d[6];
        for (int k = 5; k >= 0; --k) poly = poly * p + q.d[k];
        if (!(poly > 0.0))
            throw ContactError("squared distance vanished inside a near-field integral");
        const double w0 = std::pow(poly, -half_alpha);
        out[0] = w0;
        out[1] = (beta2 + gamma3 * p) * p * w0;
    };
    QuadControls ctl;
    ctl.rel_tol = kp.near_quad_tol;
    ctl.min_step = kp.near_min_step;
    const auto y = integrate_pair(w, ctl);
    return {y[0], y[1]};
}

StageGeometry::StageGeometry(const PatchSystem& sys) {
    segs.reserve(sys.contours.size());
    for (const auto& c : sys.contours) segs.push_back(compute_segments(c));
}

namespace {

enum class SelfTerm { none, case1, case2 };

// Accumulates sum_k theta_k/(2 pi) sum_i (I1 (t_i + mu_i n_i) + I2 n_i).
// When skip_tangential is set, the endpoint-singular I1 parts (tangential at
// the target, divergent at alpha = 1) of the target's own two segments are
// dropped; geometric endpoint coincidences on other contours stay full.
Vec2 accumulate_velocity(const PatchSystem& sys, const StageGeometry& geo, const Vec2& target,
                         const std::optional<NodeRef>& loc, bool skip_tangential) {
    const double alpha = sys.alpha;
    const int order = sys.kernel.series_order;
    Vec2 total{0.0, 0.0};

    for (std::size_t k = 0; k < sys.contours.size(); ++k) {
        const Contour& c = sys.contours[k];
        const auto& segs = geo.segs[k];
        const int n = c.size();
        const bool self = loc.has_value() && loc->contour == c.id;
        const int jnode = self ? c.wrap(loc->node) : -1;
        Vec2 acc{0.0, 0.0};

        for (int i = 0; i < n; ++i) {
            const SegmentGeometry& s = segs[i];
            const Vec2& base = c.nodes[i];

            SelfTerm st = SelfTerm::none;
            bool own_segment = false;
            if (self && i == jnode) {
                st = SelfTerm::case1;
                own_segment = true;
            } else if (self && (i + 1) % n == jnode) {
                st = SelfTerm::case2;
                own_segment = true;
            } else if (dist(target, base) <= kCoincideTol * s.d) {
                st = SelfTerm::case1;
            } else if (dist(target, c.node(i + 1)) <= kCoincideTol * s.d) {
                st = SelfTerm::case2;
            }

            if (st == SelfTerm::case1) {
                const SingularCoeffs sc = singular_poly(s.mu, s.beta, s.gamma);
                const TruncSeries cs = binomial_composition(sc.u, 4, -0.5 * alpha, order);
                const double i2 =
                    endpoint_i2(cs, s.d, sc.one_plus_mu2, alpha, 2.0 * s.beta, 3.0 * s.gamma);
                acc += i2 * s.n;
                if (!(skip_tangential && own_segment)) {
                    if (!(alpha < 1.0))
                        throw std::domain_error(
                            "divergent endpoint integral at alpha = 1 (touching contours)");
                    acc += endpoint_i1(cs, s.d, sc.one_plus_mu2, alpha) * (s.t + s.mu * s.n);
                }
            } else if (st == SelfTerm::case2) {
                const TildeCoeffs tc = tilde(s);
                const SingularCoeffs sc = singular_poly(tc.mu, tc.beta, tc.gamma);
                const TruncSeries cs = binomial_composition(sc.u, 4, -0.5 * alpha, order);
                const double i2t =
                    endpoint_i2(cs, s.d, sc.one_plus_mu2, alpha, 2.0 * tc.beta, 3.0 * tc.gamma);
                acc += i2t * s.n;
                if (!(skip_tangential && own_segment)) {
                    if (!(alpha < 1.0))
                        throw std::domain_error(
                            "divergent endpoint integral at alpha = 1 (touching contours)");
                    // (t + mu n) I1 + n I2 == (t + mu~ n) I1~ + n I2~ in the
                    // substituted variable; the first factor is the tangent at
                    // the target endpoint
                    acc += endpoint_i1(cs, s.d, sc.one_plus_mu2, alpha) * (s.t + tc.mu * s.n);
                }
            } else {
                const double dx = dist(target, base);
                IntegralPair pair;
                bool done = false;
                if (dx >= sys.kernel.far_threshold * s.d * (1.0 + std::abs(s.mu))) {
                    const TruncSeries a = far_raw_series(s, base, target, alpha, order);
                    if (far_tail_ok(a)) {
                        pair = far_from_raw(a, s, dx * dx, alpha);
                        done = true;
                    }
                }
                if (!done) pair = segment_integral_near(s, base, target, alpha, sys.kernel);
                acc += pair.i1 * (s.t + s.mu * s.n) + pair.i2 * s.n;
            }
        }
        total += (c.strength / kTwoPi) * acc;
    }
    return total;
}

} // namespace

Vec2 node_velocity(const PatchSystem& sys, const StageGeometry& geo, const Vec2& target,
                   const std::optional<NodeRef>& target_location) {
    if (!(sys.alpha < 1.0))
        throw std::domain_error("full node velocity undefined at alpha = 1; use normal_velocity");
    return accumulate_velocity(sys, geo, target, target_location, false);
}

Vec2 node_velocity(const PatchSystem& sys, const Vec2& target,
                   const std::optional<NodeRef>& target_location) {
    const StageGeometry geo(sys);
    return node_velocity(sys, geo, target, target_location);
}

Vec2 normal_velocity(const PatchSystem& sys, const StageGeometry& geo, const NodeRef& target) {
    const Contour* c = sys.find_contour(target.contour);
    if (c == nullptr) throw std::invalid_argument("normal_velocity: unknown contour id");
    const int j = c->wrap(target.node);
    const Vec2 v = accumulate_velocity(sys, geo, c->nodes[j], NodeRef{target.contour, j}, true);
    const NodeFrame frame = node_frame(*c, j);
    return dot(v, frame.normal) * frame.normal;
}

Vec2 normal_velocity(const PatchSystem& sys, const NodeRef& target) {
    const StageGeometry geo(sys);
    return normal_velocity(sys, geo, target);
}

Vec2 field_velocity(const PatchSystem& sys, const StageGeometry& geo, const Vec2& target) {
    return accumulate_velocity(sys, geo, target, std::nullopt, false);
}

} // namespace alpha
