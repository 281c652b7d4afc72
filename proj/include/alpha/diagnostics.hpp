#ifndef ALPHA_DIAGNOSTICS_HPP
#define ALPHA_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace alpha {

// One row of the per-step time series. In physical mode tau is NaN, in
// selfsimilar mode t is NaN. min_distance is NaN for single-contour systems.
struct DiagnosticsRecord {
    long step = 0;
    double t = 0.0;
    double tau = 0.0;
    double min_distance = 0.0;
    double max_curvature = 0.0;
    std::vector<double> areas;
    std::vector<int> node_counts;
    double dt = 0.0;
};

struct FitResult {
    double estimate = 0.0;  // t* or slope m or exponent
    double amplitude = 0.0; // C or intercept
    double residual = 0.0;  // root-mean-square residual of the fitted model
    double window_lo = 0.0;
    double window_hi = 0.0;
    int count = 0; // points used
};

struct Sample {
    double x; // t or tau
    double y; // D or kappa_max
};

// Least-squares fit of D(t) = C (t* - t)^{1/alpha} with t* and C free and the
// exponent pinned to 1/alpha. Outer 1D search on t* (coarse scan plus
// golden-section over (t_last, t_last + 10 (t_last - t_first)]), inner
// intercept fit of log D - (1/alpha) log(t* - t).
FitResult fit_collapse_time(const std::vector<Sample>& series, double alpha,
                            double window_lo, double window_hi);

// Ordinary least squares of log D against tau. If max_samples > 0 the window
// is subsampled evenly to that many points.
FitResult fit_log_slope(const std::vector<Sample>& series, double window_lo, double window_hi,
                        int max_samples = 0);

enum class CollapseClass { non_collapsing, collapsing, marginal };

// Slope test against the non-collapse bound m > delta, with a marginal band.
CollapseClass classify_collapse(double m, double delta, double tolerance = 0.02);

std::string to_string(CollapseClass c);

// Fits log kappa_max against log(t* - t); the exponent is expected near
// -1/alpha for collapsing data.
FitResult curvature_scaling_check(const std::vector<Sample>& series, double t_star,
                                  double window_lo, double window_hi);

struct OscillationSummary {
    int extrema_count = 0;
    double max_amplitude = 0.0; // of the detrended log D
    double rms_amplitude = 0.0;
    double slope = 0.0; // trend removed
};

// Detrends log D by its fitted slope and counts the local extrema of the
// residual; used to compare runs at different resolutions.
OscillationSummary oscillation_report(const std::vector<Sample>& series);

} // namespace alpha

#endif
