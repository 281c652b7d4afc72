#include "alpha/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alpha {

namespace {

std::vector<Sample> window_select(const std::vector<Sample>& series, double lo, double hi,
                                  int max_samples) {
    std::vector<Sample> sel;
    for (const auto& s : series)
        if (s.x >= lo && s.x <= hi) sel.push_back(s);
    if (max_samples > 0 && static_cast<int>(sel.size()) > max_samples) {
        std::vector<Sample> thin;
        thin.reserve(max_samples);
        const double step = static_cast<double>(sel.size() - 1) / (max_samples - 1);
        for (int i = 0; i < max_samples; ++i)
            thin.push_back(sel[static_cast<std::size_t>(std::lround(i * step))]);
        sel = std::move(thin);
    }
    return sel;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("degenerate abscissa in linear fit");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

} // namespace

FitResult fit_collapse_time(const std::vector<Sample>& series, double alpha, double window_lo,
                            double window_hi) {
    const auto sel = window_select(series, window_lo, window_hi, 0);
    if (sel.size() < 4) throw std::invalid_argument("collapse fit needs at least 4 points");
    for (std::size_t i = 1; i < sel.size(); ++i) {
        if (!(sel[i].x > sel[i - 1].x))
            throw std::invalid_argument("collapse fit needs strictly increasing times");
        if (!(sel[i].y < sel[i - 1].y))
            throw std::invalid_argument("collapse fit needs strictly decreasing distances");
        if (!(sel[i].y > 0.0)) throw std::invalid_argument("collapse fit needs positive distances");
    }

    const double t_first = sel.front().x;
    const double t_last = sel.back().x;
    const double exponent = 1.0 / alpha;

    // rms of log D - exponent*log(t*-t) about its mean, as a function of t*
    auto residual_at = [&](double t_star) {
        double mean = 0.0;
        for (const auto& s : sel) mean += std::log(s.y) - exponent * std::log(t_star - s.x);
        mean /= sel.size();
        double ss = 0.0;
        for (const auto& s : sel) {
            const double r = std::log(s.y) - exponent * std::log(t_star - s.x) - mean;
            ss += r * r;
        }
        return std::sqrt(ss / sel.size());
    };

    const double span = t_last - t_first;
    const double lo = t_last + 1e-12 * std::max(1.0, std::abs(t_last));
    const double hi = t_last + 10.0 * span;

    // coarse scan to bracket the minimum, then golden section
    const int kScan = 256;
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= kScan; ++i) {
        const double t = lo + (hi - lo) * i / kScan;
        const double r = residual_at(t);
        if (r < best) { best = r; best_i = i; }
    }
    if (best_i == kScan)
        throw std::runtime_error("collapse-time search hit the bracket boundary");
    double a = lo + (hi - lo) * std::max(0, best_i - 1) / kScan;
    double b = lo + (hi - lo) * std::min(kScan, best_i + 1) / kScan;
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = residual_at(x1), f2 = residual_at(x2);
    while (b - a > 1e-11 * std::max(1.0, std::abs(t_last))) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1; x1 = b - phi * (b - a); f1 = residual_at(x1);
        } else {
            a = x1; x1 = x2; f1 = f2; x2 = a + phi * (b - a); f2 = residual_at(x2);
        }
    }
    const double t_star = 0.5 * (a + b);

    double mean = 0.0;
    for (const auto& s : sel) mean += std::log(s.y) - exponent * std::log(t_star - s.x);
    mean /= sel.size();

    FitResult r;
    r.estimate = t_star;
    r.amplitude = std::exp(mean);
    r.residual = residual_at(t_star);
    r.window_lo = t_first;
    r.window_hi = t_last;
    r.count = static_cast<int>(sel.size());
    return r;
}

FitResult fit_log_slope(const std::vector<Sample>& series, double window_lo, double window_hi,
                        int max_samples) {
    const auto sel = window_select(series, window_lo, window_hi, max_samples);
    if (sel.size() < 3) throw std::invalid_argument("slope fit needs at least 3 points");
    std::vector<double> x, y;
    x.reserve(sel.size());
    y.reserve(sel.size());
    for (const auto& s : sel) {
        if (!(s.y > 0.0)) throw std::invalid_argument("slope fit needs positive distances");
        x.push_back(s.x);
        y.push_back(std::log(s.y));
    }
    const LineFit f = ols(x, y);
    FitResult r;
    r.estimate = f.slope;
    r.amplitude = f.intercept;
    r.residual = f.rms;
    r.window_lo = sel.front().x;
    r.window_hi = sel.back().x;
    r.count = static_cast<int>(sel.size());
    return r;
}

CollapseClass classify_collapse(double m, double delta, double tolerance) {
    if (!std::isfinite(m) || !std::isfinite(delta) || !std::isfinite(tolerance))
        throw std::invalid_argument("classify_collapse needs finite inputs");
    if (m > delta + tolerance) return CollapseClass::non_collapsing;
    if (m < delta - tolerance) return CollapseClass::collapsing;
    return CollapseClass::marginal;
}

std::string to_string(CollapseClass c) {
    switch (c) {
        case CollapseClass::non_collapsing: return "non_collapsing";
        case CollapseClass::collapsing: return "collapsing";
        case CollapseClass::marginal: return "marginal";
    }
    return "unknown";
}

FitResult curvature_scaling_check(const std::vector<Sample>& series, double t_star,
                                  double window_lo, double window_hi) {
    const auto sel = window_select(series, window_lo, window_hi, 0);
    if (sel.size() < 3) throw std::invalid_argument("scaling fit needs at least 3 points");
    std::vector<double> x, y;
    for (const auto& s : sel) {
        if (!(s.x < t_star)) throw std::invalid_argument("window must precede t*");
        if (!(s.y > 0.0)) throw std::invalid_argument("scaling fit needs positive curvature");
        x.push_back(std::log(t_star - s.x));
        y.push_back(std::log(s.y));
    }
    const LineFit f = ols(x, y);
    FitResult r;
    r.estimate = f.slope; // expected near -1/alpha
    r.amplitude = f.intercept;
    r.residual = f.rms;
    r.window_lo = sel.front().x;
    r.window_hi = sel.back().x;
    r.count = static_cast<int>(sel.size());
    return r;
}

OscillationSummary oscillation_report(const std::vector<Sample>& series) {
    if (series.size() < 10) throw std::invalid_argument("oscillation report needs >= 10 samples");
    std::vector<double> x, y;
    for (const auto& s : series) {
        if (!(s.y > 0.0)) throw std::invalid_argument("oscillation report needs positive data");
        x.push_back(s.x);
        y.push_back(std::log(s.y));
    }
    const LineFit f = ols(x, y);
    std::vector<double> resid(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) resid[i] = y[i] - (f.intercept + f.slope * x[i]);

    OscillationSummary out;
    out.slope = f.slope;
    int flips = 0;
    double prev_diff = 0.0;
    for (std::size_t i = 1; i < resid.size(); ++i) {
        const double d = resid[i] - resid[i - 1];
        if (d == 0.0) continue;
        if (prev_diff != 0.0 && ((d > 0) != (prev_diff > 0))) ++flips;
        prev_diff = d;
    }
    out.extrema_count = flips;
    double ss = 0.0;
    for (double r : resid) {
        out.max_amplitude = std::max(out.max_amplitude, std::abs(r));
        ss += r * r;
    }
    out.rms_amplitude = std::sqrt(ss / resid.size());
    return out;
}

} // namespace alpha
