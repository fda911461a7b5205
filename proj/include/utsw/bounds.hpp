#pragma once

#include <cmath>

namespace utsw {

// Riemann zeta at 3; the analysis only uses zeta(3) < 1.20206.
inline constexpr double kZeta3 = 1.2020569031595942854;

// Closed-form upper bound on the probability that some 4-cycle rooted at a
// vertex uses a long-range edge:
//   70/9 L^-1 + (65/2 z3 + 403/128) L^-2 + (24 z3 + 8) M L^-3
//   + (3/4 z3 + 1/4) M^2 L^-4,  with L = ln(n/2), M = ln n + 1.
inline double theoretical_eu_bound(int n) {
    const double L = std::log((double)n / 2.0);
    const double M = std::log((double)n) + 1.0;
    const double L2 = L * L;
    return 70.0 / 9.0 / L + (65.0 / 2.0 * kZeta3 + 403.0 / 128.0) / L2 +
           (24.0 * kZeta3 + 8.0) * M / (L2 * L) +
           (0.75 * kZeta3 + 0.25) * M * M / (L2 * L2);
}

// Upper bound on the expected size of a root's deduplicated 4-cycle set:
// 4 plus a four-term tail with the same shape as theoretical_eu_bound.
inline double expected_cycle_set_size_bound(int n) {
    const double L = std::log((double)n / 2.0);
    const double M = std::log((double)n) + 1.0;
    const double L2 = L * L;
    return 4.0 + 146.0 / 9.0 / L + (89.0 / 2.0 * kZeta3 + 583.0 / 128.0) / L2 +
           (24.0 * kZeta3 + 8.0) * M / (L2 * L) +
           (0.75 * kZeta3 + 0.25) * M * M / (L2 * L2);
}

} // namespace utsw
