#include "alpha/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "alpha/io.hpp"
#include "alpha/selfsim.hpp"

namespace alpha {

Contour make_circle(const Vec2& center, double radius, int n, double theta, int id) {
    return make_ellipse(center, radius, radius, n, theta, id);
}

Contour make_ellipse(const Vec2& center, double semi_a, double semi_b, int n, double theta,
                     int id) {
    if (n < 4) throw std::invalid_argument("ellipse needs at least 4 nodes");
    Contour c;
    c.strength = theta;
    c.id = id;
    c.nodes.reserve(n);
    for (int j = 0; j < n; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n;
        c.nodes.push_back(center + Vec2{semi_a * std::cos(phi), semi_b * std::sin(phi)});
    }
    return c;
}

RedistributionParams redistribution_from(const RunConfig& cfg) {
    RedistributionParams rp;
    rp.nu = cfg.nu;
    rp.delta_min = cfg.delta_min;
    rp.L = cfg.L;
    rp.a = cfg.a;
    return rp;
}

KernelParams kernel_from(const RunConfig& cfg) {
    KernelParams kp;
    kp.far_threshold = cfg.far_threshold;
    kp.series_order = cfg.series_order;
    kp.near_quad_tol = cfg.near_quad_tol;
    return kp;
}

namespace {

// Seeded low-mode radial jitter, applied about the contour centroid.
void apply_noise(Contour& c, double amplitude, std::uint64_t seed) {
    if (amplitude == 0.0) return;
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(c.id) * 7919u);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    double a_m[5], phi_m[5];
    for (int m = 0; m < 5; ++m) {
        a_m[m] = amp(rng);
        phi_m[m] = unif(rng);
    }
    Vec2 centroid{0.0, 0.0};
    for (const auto& p : c.nodes) centroid += p;
    centroid *= 1.0 / c.size();
    for (auto& p : c.nodes) {
        const Vec2 r = p - centroid;
        const double phi = std::atan2(r.y, r.x);
        double factor = 0.0;
        for (int m = 0; m < 5; ++m) factor += a_m[m] * std::cos((m + 2) * phi + phi_m[m]);
        p = centroid + (1.0 + amplitude * factor) * r;
    }
}

// Mirror image about the vertical line x = axis_x, node order reversed so the
// orientation is preserved; the image of the seed node stays first.
Contour mirrored_about(const Contour& src, double axis_x, int id) {
    Contour out;
    out.strength = src.strength;
    out.id = id;
    out.nodes.reserve(src.nodes.size());
    out.nodes.push_back({2.0 * axis_x - src.nodes[0].x, src.nodes[0].y});
    for (std::size_t j = src.nodes.size() - 1; j >= 1; --j)
        out.nodes.push_back({2.0 * axis_x - src.nodes[j].x, src.nodes[j].y});
    return out;
}

} // namespace

PatchSystem build_scenario(const RunConfig& cfg) {
    const Mode mode = cfg.mode == "selfsimilar" ? Mode::selfsimilar : Mode::physical;
    if (cfg.mode != "physical" && cfg.mode != "selfsimilar")
        throw std::invalid_argument("unknown mode: " + cfg.mode);

    const RedistributionParams rp = redistribution_from(cfg);
    std::vector<Contour> contours;

    if (cfg.scenario == "two_circles" || cfg.scenario == "two_ellipses") {
        const double a = cfg.scenario == "two_circles" ? cfg.radius : cfg.ellipse_a;
        const double b = cfg.scenario == "two_circles" ? cfg.radius : cfg.ellipse_b;
        Contour c1 = make_ellipse({0.0, 0.0}, a, b, 256, cfg.theta, 0);
        apply_noise(c1, cfg.noise_amplitude, cfg.seed);
        Contour c2 = mirrored_about(c1, 0.5 * cfg.distance, 1);
        contours = {std::move(c1), std::move(c2)};
    } else if (cfg.scenario == "wedge") {
        WedgeSpec spec;
        spec.x_max = cfg.wedge_xmax;
        spec.rotation = cfg.wedge_rotation;
        spec.perturbation = cfg.wedge_perturbation;
        spec.shift = cfg.wedge_shift;
        spec.extension = cfg.wedge_extension;
        spec.apex_spacing = cfg.wedge_apex_spacing;
        auto [w1, w2] = make_wedge(spec);
        w1.strength = cfg.theta;
        w2.strength = cfg.theta;
        contours = {std::move(w1), std::move(w2)};
    } else if (cfg.scenario == "from_file") {
        PatchSystem sys = read_snapshot(cfg.scenario_file).system;
        sys.kernel = kernel_from(cfg);
        validate_system(sys);
        return sys;
    } else {
        throw std::invalid_argument("unknown scenario: " + cfg.scenario);
    }

    for (auto& c : contours) c = redistribute(c, rp);
    return make_system(cfg.alpha, mode, std::move(contours), kernel_from(cfg));
}

} // namespace alpha
