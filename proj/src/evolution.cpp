#include "alpha/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "alpha/parallel.hpp"
#include "alpha/rkquad.hpp"
#include "alpha/selfsim.hpp"

namespace alpha {

void validate_redistribution_params(const RedistributionParams& p) {
    if (!(p.nu > 0.0)) throw std::invalid_argument("nu must be positive");
    if (!(p.delta_min > 0.0)) throw std::invalid_argument("delta_min must be positive");
    if (!(p.L > 0.0)) throw std::invalid_argument("L must be positive");
}

namespace {

struct Velocities {
    std::vector<std::vector<Vec2>> nodes;
    Vec2 tracer;
};

Velocities eval_velocities(const PatchSystem& sys) {
    const StageGeometry geo(sys);
    const bool selfsim = sys.mode == Mode::selfsimilar;
    Vec2 f0;
    if (selfsim) f0 = origin_velocity(sys, geo);

    Velocities v;
    v.nodes.resize(sys.contours.size());
    std::vector<std::pair<int, int>> flat;
    for (std::size_t k = 0; k < sys.contours.size(); ++k) {
        v.nodes[k].resize(sys.contours[k].size());
        for (int j = 0; j < sys.contours[k].size(); ++j)
            flat.emplace_back(static_cast<int>(k), j);
    }

    parallel_for(flat.size(), [&](std::size_t idx) {
        const auto [k, j] = flat[idx];
        const Contour& c = sys.contours[k];
        const NodeRef ref{c.id, j};
        Vec2 vel;
        if (selfsim) {
            vel = rescaled_velocity(sys, geo, ref, f0);
        } else if (sys.alpha < 1.0) {
            vel = node_velocity(sys, geo, c.nodes[j], ref);
        } else {
            vel = normal_velocity(sys, geo, ref);
        }
        v.nodes[k][j] = vel;
    });

    if (sys.tracer) {
        const Vec2 p = *sys.tracer;
        const Vec2 f = field_velocity(sys, geo, p);
        v.tracer = selfsim ? sys.delta * p + f - f0 : f;
    }
    return v;
}

PatchSystem shifted(const PatchSystem& sys, const Velocities& v, double c) {
    PatchSystem out = sys;
    for (std::size_t k = 0; k < out.contours.size(); ++k)
        for (std::size_t j = 0; j < out.contours[k].nodes.size(); ++j)
            out.contours[k].nodes[j] += c * v.nodes[k][j];
    if (out.tracer) *out.tracer += c * v.tracer;
    return out;
}

} // namespace

PatchSystem rk4_step(const PatchSystem& sys, double dt) {
    if (dt == 0.0) throw std::invalid_argument("rk4_step: dt must be nonzero");
    const Velocities k1 = eval_velocities(sys);
    const Velocities k2 = eval_velocities(shifted(sys, k1, 0.5 * dt));
    const Velocities k3 = eval_velocities(shifted(sys, k2, 0.5 * dt));
    const Velocities k4 = eval_velocities(shifted(sys, k3, dt));

    PatchSystem out = sys;
    const double w = dt / 6.0;
    for (std::size_t k = 0; k < out.contours.size(); ++k)
        for (std::size_t j = 0; j < out.contours[k].nodes.size(); ++j)
            out.contours[k].nodes[j] +=
                w * (k1.nodes[k][j] + 2.0 * k2.nodes[k][j] + 2.0 * k3.nodes[k][j] +
                     k4.nodes[k][j]);
    if (out.tracer)
        *out.tracer += w * (k1.tracer + 2.0 * k2.tracer + 2.0 * k3.tracer + k4.tracer);
    out.time += dt;
    return out;
}

double adaptive_dt(const PatchSystem& sys, double B) {
    if (!(B > 0.0)) throw std::invalid_argument("adaptive_dt: B must be positive");
    double dx = std::numeric_limits<double>::infinity();
    for (const auto& c : sys.contours)
        for (int j = 0; j < c.size(); ++j) dx = std::min(dx, dist(c.nodes[j], c.node(j + 1)));
    return B * dx;
}

Contour redistribute(const Contour& c, const RedistributionParams& rp) {
    validate_redistribution_params(rp);
    const int n = c.size();
    const auto segs = compute_segments(c);
    const double sqrt2 = std::numbers::sqrt2;

    // segment-averaged curvature magnitudes and chord midpoints
    std::vector<double> kbar(n), d(n);
    std::vector<Vec2> mid(n);
    for (int j = 0; j < n; ++j) {
        kbar[j] = 0.5 * (segs[j].kappa0 + segs[j].kappa1);
        d[j] = segs[j].d;
        mid[j] = c.nodes[j] + 0.5 * segs[j].t;
    }

    // non-local curvature per node; all segments participate, including the
    // adjacent ones
    std::vector<double> ktilde(n);
    for (int i = 0; i < n; ++i) {
        double num = 0.0, den = 0.0;
        const Vec2& xi = c.nodes[i];
        for (int j = 0; j < n; ++j) {
            const double h2 = norm2(xi - mid[j]) + 1e-300;
            const double w = d[j] / h2;
            num += w * std::abs(kbar[j]);
            den += w;
        }
        const double kbreve = num / den;
        ktilde[i] = std::pow(kbreve * rp.L, rp.a) / (rp.nu * rp.L) + sqrt2 * kbreve;
    }

    // fractional node counts per segment; the density cap keeps the minimum
    // spacing near delta_min/sqrt(2)
    std::vector<double> sigma(n);
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
        const double khat = 0.5 * (ktilde[i] + ktilde[(i + 1) % n]);
        const double rho = khat / (1.0 + rp.delta_min * khat / sqrt2);
        sigma[i] = rho * d[i];
        q += sigma[i];
    }
    if (q < 2.0)
        throw std::runtime_error("redistribute: contour too short or flat to resolve (q = " +
                                 std::to_string(q) + ")");

    const long n_new = std::lround(q) + 2;
    const double scale = static_cast<double>(n_new) / q;

    Contour out;
    out.strength = c.strength;
    out.id = c.id;
    out.nodes.reserve(n_new);
    out.nodes.push_back(c.nodes[0]); // node 1 is pinned

    int i = 0;
    double cum = 0.0; // sum of sigma'_l for l < i
    for (long j = 2; j <= n_new; ++j) {
        const double target = static_cast<double>(j - 1);
        while (i < n - 1 && cum + sigma[i] * scale < target) {
            cum += sigma[i] * scale;
            ++i;
        }
        const double p = std::clamp((target - cum) / (sigma[i] * scale), 0.0, 1.0);
        out.nodes.push_back(eval_segment(segs[i], c.nodes[i], p));
    }
    return out;
}

DiagnosticsRecord make_record(const PatchSystem& sys, long step, double dt) {
    DiagnosticsRecord r;
    r.step = step;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.t = sys.mode == Mode::physical ? sys.time : nan;
    r.tau = sys.mode == Mode::selfsimilar ? sys.time : nan;
    r.dt = dt;

    r.min_distance = nan;
    for (std::size_t a = 0; a < sys.contours.size(); ++a)
        for (std::size_t b = a + 1; b < sys.contours.size(); ++b) {
            const double d = min_distance(sys.contours[a], sys.contours[b]).distance;
            if (!(r.min_distance <= d)) r.min_distance = d; // NaN-aware min
        }

    r.max_curvature = 0.0;
    for (const auto& c : sys.contours) {
        for (double k : contour_curvatures(c))
            r.max_curvature = std::max(r.max_curvature, std::abs(k));
        r.areas.push_back(contour_area(c).area);
        r.node_counts.push_back(c.size());
    }
    return r;
}

SimResult simulate(PatchSystem sys, const SimConfig& cfg, const RecordSink& on_record,
                   const SnapshotSink& on_snapshot) {
    validate_system(sys);
    validate_redistribution_params(cfg.redist);
    if (!(cfg.B > 0.0)) throw std::invalid_argument("simulate: B must be positive");

    std::vector<int> orientation;
    for (const auto& c : sys.contours) orientation.push_back(contour_area(c).orientation);

    if (on_record) on_record(make_record(sys, 0, 0.0));
    if (on_snapshot) on_snapshot(sys, 0);

    SimResult result;
    long step = 0;
    while (true) {
        if (step >= cfg.max_steps) {
            result.reason = StopReason::max_steps;
            break;
        }
        if (sys.time >= cfg.time_end) {
            result.reason = StopReason::time_reached;
            break;
        }
        const double dt = adaptive_dt(sys, cfg.B);
        try {
            sys = rk4_step(sys, dt);
            for (auto& c : sys.contours) c = redistribute(c, cfg.redist);
        } catch (const ContactError& e) {
            result.reason = StopReason::contact;
            result.message = e.what();
            break;
        }
        ++step;

        bool flipped = false;
        for (std::size_t k = 0; k < sys.contours.size(); ++k)
            if (contour_area(sys.contours[k]).orientation != orientation[k]) flipped = true;
        if (flipped) {
            result.reason = StopReason::orientation_flip;
            result.message = "contour orientation flipped; the run is no longer valid";
            if (on_record) on_record(make_record(sys, step, dt));
            break;
        }

        if (on_record) on_record(make_record(sys, step, dt));
        if (on_snapshot && cfg.snapshot_stride > 0 && step % cfg.snapshot_stride == 0)
            on_snapshot(sys, step);
    }
    result.system = std::move(sys);
    result.steps = step;
    return result;
}

} // namespace alpha
