#pragma once

#include <cmath>
#include <functional>

namespace smcmix {

// Scalar helpers shared by the closed-form densities. The closed forms are
// ratios that become 0/0 at the origin; each helper below evaluates its
// numerator without cancellation. Series branches switch at |x| < 1e-4 with
// truncation error far below 1e-16 relative.

// (1 - e^{-u}) / u, continuous through u = 0 where it equals 1.
inline double em1_over(double u) {
  if (u == 0.0) return 1.0;
  return -std::expm1(-u) / u;
}

// x - 1 + e^{-x}. Direct evaluation loses ~2eps/x relative accuracy as
// x -> 0 (the result is ~x^2/2), hence the series branch.
inline double xm1_exp(double x) {
  if (std::fabs(x) < 1e-4) {
    return x * x * (0.5 + x * (-1.0 / 6.0 + x * (1.0 / 24.0 - x / 120.0)));
  }
  return x + std::expm1(-x);
}

// D(s) = 2s + 1 - e^{-2s}, the normalizer of the SMC' jump density.
// expm1(-2s) < 0 for s > 0, so the subtraction never cancels.
inline double smc_prime_norm(double s) { return 2.0 * s - std::expm1(-2.0 * s); }

// Numerator of the SMC' mean map, x^2 + 2x + 3/2 - (x + 3/2) e^{-2x}.
// Equals 4x + x^4/3 - (4/15)x^5 + O(x^6) near 0.
inline double smc_prime_mean_numer(double x) {
  if (x < 1e-4) {
    return x * (4.0 + x * x * x * (1.0 / 3.0 - x * (4.0 / 15.0)));
  }
  return x * x + 2.0 * x + 1.5 - (x + 1.5) * std::exp(-2.0 * x);
}

// Inverts a strictly increasing CDF on (lo, hi): bracketed bisection to a
// width of 1e-12 * max(1, |y|), then two Newton steps with the density.
// `density` may be empty, in which case only bisection is used.
double invert_increasing_cdf(const std::function<double(double)>& cdf,
                             double target, double lo, double hi,
                             const std::function<double(double)>& density = {});

}  // namespace smcmix
