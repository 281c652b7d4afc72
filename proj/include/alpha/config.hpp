#ifndef ALPHA_CONFIG_HPP
#define ALPHA_CONFIG_HPP

#include <cstdint>
#include <limits>
#include <string>

namespace alpha {

// Run configuration: plain-text key = value file, units-free scalars.
// Serialization round-trips losslessly (17 significant digits).
struct RunConfig {
    double alpha = 0.7;
    std::string mode = "physical"; // physical | selfsimilar
    std::string scenario = "two_circles"; // two_circles | two_ellipses | wedge | from_file

    // scenario parameters
    double radius = 1.0;
    double distance = 2.5;
    double theta = -1.0;
    double ellipse_a = 1.1;
    double ellipse_b = 1.0;
    double wedge_xmax = 20.0;
    double wedge_rotation = 0.0;
    double wedge_perturbation = 0.0;
    double wedge_shift = 0.0;
    double wedge_extension = 4096.0;
    double wedge_apex_spacing = 0.01;
    double noise_amplitude = 0.0; // seeded low-mode boundary jitter for circle/ellipse scenarios
    std::string scenario_file;    // snapshot prefix for scenario = from_file

    // kernel controls
    double far_threshold = 5.0;
    int series_order = 10;
    double near_quad_tol = 1e-9;

    // redistribution
    double nu = 0.05;
    double delta_min = 1e-6;
    double L = 3.0;
    double a = 2.0 / 3.0;

    // stepping and stopping
    double B = 0.0; // <= 0: pick by alpha (0.5 for alpha <= 0.8, else 0.25)
    double t_end = std::numeric_limits<double>::infinity();
    double tau_end = std::numeric_limits<double>::infinity();
    long max_steps = 1000;
    int snapshot_stride = 100;

    std::string out_dir = "out";
    std::uint64_t seed = 12345;

    double effective_B() const { return B > 0.0 ? B : (alpha <= 0.8 ? 0.5 : 0.25); }
};

std::string serialize_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// FNV-1a hash of the canonical serialization, as 16 hex characters.
std::string config_hash(const RunConfig& cfg);

// 17-significant-digit decimal text; round-trips doubles exactly.
std::string format_double(double v);

} // namespace alpha

#endif
