#ifndef ALPHA_SERIES_HPP
#define ALPHA_SERIES_HPP

#include <array>

namespace alpha {

// Truncated power series in p. Fixed capacity so the hot paths never allocate.
inline constexpr int kMaxSeriesLen = 25; // order <= 24

struct TruncSeries {
    int n = 0; // number of coefficients (order + 1)
    std::array<double, kMaxSeriesLen> c{};

    double operator[](int i) const { return c[i]; }
    double& operator[](int i) { return c[i]; }
};

// Maclaurin coefficients of (1 + u(p))^e where u is a polynomial with
// u(0) = 0, given as u_coeffs[1..deg]. Computed by the power-series
// recurrence of the ODE (1+u) h' = e u' h, equivalent to composing the
// binomial series of (1+u)^e with u; h_0 = 1 exactly.
TruncSeries binomial_composition(const double* u_coeffs, int deg, double exponent, int order);

} // namespace alpha

#endif
