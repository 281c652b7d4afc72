#include "alpha/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace alpha {

void validate_contour(const Contour& c) {
    const int n = c.size();
    if (n < 4)
        throw std::invalid_argument("contour " + std::to_string(c.id) +
                                    ": needs at least 4 nodes, has " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
        if (!(dist(c.nodes[j], c.node(j + 1)) > 0.0))
            throw std::invalid_argument("contour " + std::to_string(c.id) +
                                        ": coincident consecutive nodes at index " +
                                        std::to_string(j));
    }
}

double local_curvature(const Vec2& x_prev, const Vec2& x, const Vec2& x_next) {
    const Vec2 t_prev = x - x_prev;
    const Vec2 t_next = x_next - x;
    const double d2_prev = norm2(t_prev);
    const double d2_next = norm2(t_next);
    const Vec2 den_vec = d2_prev * t_next + d2_next * t_prev;
    const double num = cross(t_prev, t_next);
    if (num == 0.0) return 0.0; // collinear
    return 2.0 * num / norm(den_vec);
}

std::vector<double> contour_curvatures(const Contour& c) {
    const int n = c.size();
    std::vector<double> kappa(n);
    for (int j = 0; j < n; ++j)
        kappa[j] = local_curvature(c.node(j - 1), c.nodes[j], c.node(j + 1));
    return kappa;
}

static SegmentGeometry make_segment(const Vec2& a, const Vec2& b, double k0, double k1) {
    SegmentGeometry s;
    s.t = b - a;
    s.n = rot90(s.t);
    s.d = norm(s.t);
    s.kappa0 = k0;
    s.kappa1 = k1;
    s.mu = -(1.0 / 3.0) * s.d * k0 - (1.0 / 6.0) * s.d * k1;
    s.beta = 0.5 * s.d * k0;
    s.gamma = (1.0 / 6.0) * s.d * (k1 - k0);
    return s;
}

SegmentGeometry segment_geometry(const Contour& c, int j) {
    const double k0 = local_curvature(c.node(j - 1), c.node(j), c.node(j + 1));
    const double k1 = local_curvature(c.node(j), c.node(j + 1), c.node(j + 2));
    return make_segment(c.node(j), c.node(j + 1), k0, k1);
}

std::vector<SegmentGeometry> compute_segments(const Contour& c) {
    const auto kappa = contour_curvatures(c);
    const int n = c.size();
    std::vector<SegmentGeometry> segs(n);
    for (int j = 0; j < n; ++j)
        segs[j] = make_segment(c.nodes[j], c.node(j + 1), kappa[j], kappa[(j + 1) % n]);
    return segs;
}

Vec2 eval_segment(const SegmentGeometry& seg, const Vec2& base, double p) {
    const double eta = ((seg.gamma * p + seg.beta) * p + seg.mu) * p;
    return base + p * seg.t + eta * seg.n;
}

NodeFrame node_frame(const Contour& c, int j) {
    const Vec2 t_prev = c.node(j) - c.node(j - 1);
    const Vec2 t_next = c.node(j + 1) - c.node(j);
    const Vec2 w = norm2(t_prev) * t_next + norm2(t_next) * t_prev;
    NodeFrame f;
    f.tangent = normalized(w);
    f.normal = rot90(f.tangent);
    return f;
}

AreaResult contour_area(const Contour& c) {
    // 4-point Gauss-Legendre on [0,1]
    static const double gx[4] = {0.069431844202973712, 0.330009478207571868,
                                 0.669990521792428132, 0.930568155797026288};
    static const double gw[4] = {0.173927422568726929, 0.326072577431273071,
                                 0.326072577431273071, 0.173927422568726929};
    const auto segs = compute_segments(c);
    double twice_area = 0.0;
    for (int j = 0; j < c.size(); ++j) {
        const auto& s = segs[j];
        const Vec2& base = c.nodes[j];
        double acc = 0.0;
        for (int q = 0; q < 4; ++q) {
            const double p = gx[q];
            const double eta = ((s.gamma * p + s.beta) * p + s.mu) * p;
            const double deta = (3.0 * s.gamma * p + 2.0 * s.beta) * p + s.mu;
            const Vec2 pos = base + p * s.t + eta * s.n;
            const Vec2 vel = s.t + deta * s.n;
            acc += gw[q] * cross(pos, vel);
        }
        twice_area += acc;
    }
    AreaResult r;
    r.orientation = twice_area >= 0.0 ? +1 : -1;
    r.area = 0.5 * std::abs(twice_area);
    return r;
}

namespace {

struct CurveView {
    const Contour* c;
    std::vector<SegmentGeometry> segs;

    explicit CurveView(const Contour& contour) : c(&contour), segs(compute_segments(contour)) {}

    // u in [0, N): segment floor(u), local parameter frac(u)
    Vec2 eval(double u) const {
        const int n = c->size();
        u = std::fmod(u, static_cast<double>(n));
        if (u < 0.0) u += n;
        int j = static_cast<int>(u);
        if (j >= n) j = n - 1;
        return eval_segment(segs[j], c->nodes[j], u - j);
    }

    // conservative radius bound around the segment chord midpoint
    double seg_radius(int j) const {
        const auto& s = segs[j];
        return 0.5 * s.d + s.d * (std::abs(s.mu) + std::abs(s.beta) + std::abs(s.gamma));
    }
    Vec2 seg_center(int j) const { return c->nodes[j] + 0.5 * segs[j].t; }
};

double golden_min_1d(const std::function<double(double)>& f, double lo, double hi,
                     double tol, double* arg) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        }
    }
    *arg = 0.5 * (a + b);
    return f(*arg);
}

} // namespace

DistanceResult min_distance(const Contour& a, const Contour& b) {
    const CurveView va(a), vb(b);
    const int na = a.size(), nb = b.size();

    // seed with node pairs
    double best = std::numeric_limits<double>::infinity();
    double ua = 0.0, ub = 0.0;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            const double d2 = norm2(a.nodes[i] - b.nodes[j]);
            if (d2 < best) { best = d2; ua = i; ub = j; }
        }
    best = std::sqrt(best);

    // coarse grid, 8 samples per segment, pruned by chord-midpoint bounds
    constexpr int kSamples = 8;
    for (int i = 0; i < na; ++i) {
        const Vec2 ca = va.seg_center(i);
        const double ra = va.seg_radius(i);
        for (int j = 0; j < nb; ++j) {
            if (dist(ca, vb.seg_center(j)) - ra - vb.seg_radius(j) >= best) continue;
            for (int si = 0; si < kSamples; ++si) {
                const double pi = (si + 0.5) / kSamples;
                const Vec2 pa = eval_segment(va.segs[i], a.nodes[i], pi);
                for (int sj = 0; sj < kSamples; ++sj) {
                    const double pj = (sj + 0.5) / kSamples;
                    const double d = dist(pa, eval_segment(vb.segs[j], b.nodes[j], pj));
                    if (d < best) { best = d; ua = i + pi; ub = j + pj; }
                }
            }
        }
    }

    // alternating golden-section refinement around the best cell
    const double w = 1.0 / kSamples;
    for (int round = 0; round < 80; ++round) {
        const double prev = best;
        double arg;
        std::function<double(double)> fa = [&](double u) { return dist(va.eval(u), vb.eval(ub)); };
        best = golden_min_1d(fa, ua - 1.5 * w, ua + 1.5 * w, 1e-13, &arg);
        ua = arg;
        std::function<double(double)> fb = [&](double u) { return dist(va.eval(ua), vb.eval(u)); };
        best = golden_min_1d(fb, ub - 1.5 * w, ub + 1.5 * w, 1e-13, &arg);
        ub = arg;
        if (prev - best <= 1e-10 * std::max(best, 1e-300)) break;
    }

    DistanceResult r;
    r.point_a = va.eval(ua);
    r.point_b = vb.eval(ub);
    r.distance = dist(r.point_a, r.point_b);
    return r;
}

DistanceResult point_contour_distance(const Vec2& p, const Contour& c) {
    const CurveView vc(c);
    const int n = c.size();
    double best = std::numeric_limits<double>::infinity();
    double uc = 0.0;
    constexpr int kSamples = 8;
    for (int j = 0; j < n; ++j) {
        if (dist(p, vc.seg_center(j)) - vc.seg_radius(j) >= best) continue;
        for (int sj = 0; sj <= kSamples; ++sj) {
            const double pj = static_cast<double>(sj) / kSamples;
            const double d = dist(p, eval_segment(vc.segs[j], c.nodes[j], pj));
            if (d < best) { best = d; uc = j + pj; }
        }
    }
    const double w = 1.0 / kSamples;
    double arg;
    std::function<double(double)> f = [&](double u) { return dist(p, vc.eval(u)); };
    best = golden_min_1d(f, uc - 1.5 * w, uc + 1.5 * w, 1e-13, &arg);
    DistanceResult r;
    r.point_a = p;
    r.point_b = vc.eval(arg);
    r.distance = dist(r.point_a, r.point_b);
    return r;
}

} // namespace alpha
