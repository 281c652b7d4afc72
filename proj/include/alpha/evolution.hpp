#ifndef ALPHA_EVOLUTION_HPP
#define ALPHA_EVOLUTION_HPP

#include <functional>
#include <string>

#include "alpha/diagnostics.hpp"
#include "alpha/kernel.hpp"

namespace alpha {

// Curvature-adaptive node redistribution controls. delta_min is the paper's
// redistribution delta (minimum-spacing scale), renamed to avoid clashing
// with delta = 1/alpha.
struct RedistributionParams {
    double nu = 0.05; // accuracy parameter; smaller means denser nodes
    double delta_min = 1e-6;
    double L = 3.0;
    double a = 2.0 / 3.0;
};

void validate_redistribution_params(const RedistributionParams& p);

// One classical RK4 update of every node (and the tracer, if any) under the
// mode's vector field. Negative dt runs time backwards. Node counts are
// unchanged within the step.
PatchSystem rk4_step(const PatchSystem& sys, double dt);

// dt = B * (minimum segment chord over all contours).
double adaptive_dt(const PatchSystem& sys, double B);

// Non-local curvature-weighted re-meshing; node 1 of the input is kept fixed.
// Throws std::runtime_error if the contour resolves to fewer than two nodes
// (q < 2).
Contour redistribute(const Contour& c, const RedistributionParams& params);

enum class StopReason { time_reached, max_steps, contact, orientation_flip };

struct SimConfig {
    double B = 0.5;
    RedistributionParams redist;
    double time_end = std::numeric_limits<double>::infinity(); // t or tau per mode
    long max_steps = 1000;
    int snapshot_stride = 0; // 0: no intermediate snapshots
};

struct SimResult {
    PatchSystem system;
    StopReason reason = StopReason::max_steps;
    long steps = 0;
    std::string message;
};

using RecordSink = std::function<void(const DiagnosticsRecord&)>;
using SnapshotSink = std::function<void(const PatchSystem&, long step)>;

DiagnosticsRecord make_record(const PatchSystem& sys, long step, double dt);

// Main driver: loop { adaptive dt; rk4_step; redistribute every contour;
// emit diagnostics } until the stop conditions hit. A contact error stops the
// run and flags the partial result. The initial state is emitted as step 0.
SimResult simulate(PatchSystem sys, const SimConfig& cfg, const RecordSink& on_record = nullptr,
                   const SnapshotSink& on_snapshot = nullptr);

} // namespace alpha

#endif
