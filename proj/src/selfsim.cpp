#include "alpha/selfsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alpha {

Vec2 origin_velocity(const PatchSystem& sys, const StageGeometry& geo) {
    if (sys.mode != Mode::selfsimilar)
        throw std::domain_error("origin term only defined in selfsimilar mode");
    return field_velocity(sys, geo, Vec2{0.0, 0.0});
}

Vec2 rescaled_velocity(const PatchSystem& sys, const StageGeometry& geo, const NodeRef& target,
                       const Vec2& f_origin) {
    if (sys.mode != Mode::selfsimilar)
        throw std::domain_error("rescaled_velocity requires selfsimilar mode");
    const Contour* c = sys.find_contour(target.contour);
    if (c == nullptr) throw std::invalid_argument("rescaled_velocity: unknown contour id");
    const int j = c->wrap(target.node);
    const Vec2& y = c->nodes[j];

    if (sys.alpha < 1.0)
        return sys.delta * y + node_velocity(sys, geo, y, NodeRef{target.contour, j}) - f_origin;

    // alpha = 1: project the drift and origin terms on the node normal and add
    // the projected contour field
    const NodeFrame frame = node_frame(*c, j);
    const Vec2 drift = sys.delta * y - f_origin;
    return dot(drift, frame.normal) * frame.normal + normal_velocity(sys, geo, target);
}

Vec2 rescaled_velocity(const PatchSystem& sys, const NodeRef& target) {
    const StageGeometry geo(sys);
    return rescaled_velocity(sys, geo, target, origin_velocity(sys, geo));
}

namespace {

// Arclength grading positions from 0 to total with geometric spacing growing
// away from zero; first gap = finest.
std::vector<double> graded_positions(double total, double finest, double ratio) {
    std::vector<double> pos{0.0};
    double gap = finest;
    double s = 0.0;
    while (s + gap < total) {
        s += gap;
        pos.push_back(s);
        gap *= ratio;
    }
    pos.push_back(total);
    // avoid a slivered last interval
    if (pos.size() >= 3 && pos[pos.size() - 1] - pos[pos.size() - 2] <
                               0.25 * (pos[pos.size() - 2] - pos[pos.size() - 3]))
        pos.erase(pos.end() - 2);
    return pos;
}

std::vector<double> uniform_positions(double lo, double hi, double spacing_hint) {
    const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / spacing_hint)));
    std::vector<double> pos(n + 1);
    for (int i = 0; i <= n; ++i) pos[i] = lo + (hi - lo) * i / n;
    return pos;
}

} // namespace

std::pair<Contour, Contour> make_wedge(const WedgeSpec& spec) {
    if (!(spec.x_max > 0.0)) throw std::invalid_argument("make_wedge: x_max must be positive");
    if (spec.perturbation < 0.0)
        throw std::invalid_argument("make_wedge: negative apex perturbation crosses the curves");
    if (!(spec.extension >= 1.0)) throw std::invalid_argument("make_wedge: extension < 1");

    const double A = spec.perturbation;
    const double eps = spec.shift;
    const double x_ext = spec.extension * spec.x_max;

    // upper curve height above the apex-shifted position
    auto height = [&](double x) {
        const double u = x - eps;
        return A > 0.0 ? std::sqrt(u * u + A * A) : std::abs(u);
    };

    std::vector<Vec2> upper;

    // left arm from the far end in to the apex, then the right arm out;
    // graded arclength measured from the apex along each arm
    const auto arm = graded_positions(std::numbers::sqrt2 * x_ext, spec.apex_spacing,
                                      spec.grading_ratio);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (auto it = arm.rbegin(); it != arm.rend(); ++it) {
        const double x = eps - *it * inv_sqrt2;
        upper.push_back({x, height(x)});
    }
    for (std::size_t i = 1; i < arm.size(); ++i) {
        const double x = eps + arm[i] * inv_sqrt2;
        upper.push_back({x, height(x)});
    }

    // far rectangle behind the wedge; corners rounded so the re-meshing never
    // chases artificial corner curvature
    const double yl = upper.front().y, yr = upper.back().y;
    const double xr = upper.back().x, xl = upper.front().x;
    const double top = std::max(yl, yr) + spec.closure_distance * x_ext;
    const double coarse = 0.25 * x_ext;
    const double r_c = 0.2 * x_ext; // corner rounding radius

    auto emit_line = [&upper](const Vec2& from, const Vec2& to, double spacing, bool with_end) {
        const auto pos = uniform_positions(0.0, 1.0, spacing / dist(from, to));
        for (std::size_t i = 1; i + (with_end ? 0 : 1) < pos.size(); ++i)
            upper.push_back(from + pos[i] * (to - from));
    };
    auto emit_arc = [&upper](const Vec2& center, double r, double a0, double a1, int n) {
        for (int i = 1; i <= n; ++i) {
            const double a = a0 + (a1 - a0) * i / n;
            upper.push_back(center + Vec2{r * std::cos(a), r * std::sin(a)});
        }
    };

    const double half_pi = 0.5 * std::numbers::pi;
    emit_line({xr, yr}, {xr, top - r_c}, coarse, true);
    emit_arc({xr - r_c, top - r_c}, r_c, 0.0, half_pi, 6);
    emit_line({xr - r_c, top}, {xl + r_c, top}, coarse, true);
    emit_arc({xl + r_c, top - r_c}, r_c, half_pi, std::numbers::pi, 6);
    emit_line({xl, top - r_c}, {xl, yl}, coarse, false);

    Contour c1;
    c1.id = 0;
    c1.nodes = std::move(upper);

    // lower curve: point reflection of the upper one. This keeps the patch
    // orientation counterclockwise and traverses the facing edge in the
    // opposite direction, and it flips the horizontal shift sign.
    Contour c2;
    c2.id = 1;
    c2.nodes.reserve(c1.nodes.size());
    for (const auto& p : c1.nodes) c2.nodes.push_back({-p.x, -p.y});

    if (spec.rotation != 0.0) {
        for (auto& p : c1.nodes) p = rotate(p, spec.rotation);
        for (auto& p : c2.nodes) p = rotate(p, spec.rotation);
    }

    validate_contour(c1);
    validate_contour(c2);
    return {std::move(c1), std::move(c2)};
}

std::pair<std::vector<Contour>, double> rescale_physical_to_selfsim(
    const std::vector<Contour>& contours, double t, const RescaleMap& map) {
    if (!(t < map.t_star))
        throw std::invalid_argument("rescale: t must precede the collapse time t*");
    const double gap = map.t_star - t;
    const double scale = std::pow(gap, -map.delta);
    std::vector<Contour> out = contours;
    for (auto& c : out)
        for (auto& p : c.nodes) p = scale * (p - map.x_star_at_instant);
    return {std::move(out), -std::log(gap)};
}

std::pair<std::vector<Contour>, double> rescale_selfsim_to_physical(
    const std::vector<Contour>& contours, double tau, const RescaleMap& map) {
    const double gap = std::exp(-tau);
    const double scale = std::pow(gap, map.delta);
    std::vector<Contour> out = contours;
    for (auto& c : out)
        for (auto& p : c.nodes) p = map.x_star_at_instant + scale * p;
    return {std::move(out), map.t_star - gap};
}

PatchSystem backward_evolve(PatchSystem sys, int steps, double dt_mag,
                            const RedistributionParams& redist) {
    if (sys.mode != Mode::selfsimilar)
        throw std::domain_error("backward_evolve requires selfsimilar mode");
    if (!(dt_mag > 0.0)) throw std::invalid_argument("backward_evolve: dt_mag must be positive");
    for (int s = 0; s < steps; ++s) {
        sys = rk4_step(sys, -dt_mag);
        for (auto& c : sys.contours) c = redistribute(c, redist);
    }
    return sys;
}

double wedge_deviation(const Contour& c, bool upper, double x_limit) {
    double worst = 0.0;
    for (const auto& p : c.nodes) {
        if (std::abs(p.x) > x_limit) continue;
        const double target = upper ? std::abs(p.x) : -std::abs(p.x);
        // keep to the arm region; closure nodes sit far from y = +-|x|
        if (std::abs(p.y - target) > 0.5 * x_limit) continue;
        worst = std::max(worst, std::abs(p.y - target) / std::numbers::sqrt2);
    }
    return worst;
}

} // namespace alpha
