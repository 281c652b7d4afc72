#include "alpha/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace alpha {

TruncSeries binomial_composition(const double* u, int deg, double e, int order) {
    if (order < 0 || order + 1 > kMaxSeriesLen)
        throw std::invalid_argument("series order out of range");
    TruncSeries h;
    h.n = order + 1;
    h[0] = 1.0;
    // (n+1) h_{n+1} = sum_{j=1}^{min(n+1,deg)} (e j - (n+1-j)) u_j h_{n+1-j}
    double peak = 1.0;
    for (int n = 0; n < order; ++n) {
        double acc = 0.0;
        const int jmax = std::min(n + 1, deg);
        for (int j = 1; j <= jmax; ++j)
            acc += (e * j - (n + 1 - j)) * u[j] * h[n + 1 - j];
        h[n + 1] = acc / (n + 1);
        peak = std::max(peak, std::abs(h[n + 1]));
        // once two consecutive coefficients drop below double precision of
        // the series magnitude the remainder contributes nothing
        if (n >= 1 && std::abs(h[n + 1]) <= 1e-17 * peak && std::abs(h[n]) <= 1e-17 * peak) {
            for (int m = n + 2; m <= order; ++m) h[m] = 0.0;
            break;
        }
    }
    return h;
}

} // namespace alpha
