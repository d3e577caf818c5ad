#include "smcmix/dists.hpp"

#include <algorithm>
#include <cmath>

#include "smcmix/errors.hpp"
#include "smcmix/math.hpp"

namespace smcmix {

double smc_jump_density(Tmrca s, Tmrca t) {
  require_positive(s, "s");
  require_positive(t, "t");
  const double m = std::min(s, t);
  return std::exp(-t) * (-std::expm1(-m)) * std::exp(m) / s;
}

double smc_cdf(Tmrca s, Tmrca t) {
  require_positive(s, "s");
  require_positive(t, "t");
  if (t <= s) {
    return xm1_exp(t) / s;
  }
  // integral over (0,s] plus the exponential tail piece on (s,t];
  // (e^s - 1)(e^{-s} - e^{-t})/s = (1 - e^{-s})(1 - e^{-(t-s)})/s
  const double head = xm1_exp(s) / s;
  const double tail = std::expm1(-s) * std::expm1(-(t - s)) / s;
  return std::min(1.0, head + tail);
}

Tmrca smc_quantile(Tmrca s, double u) {
  require_positive(s, "s");
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("u must be in (0,1)");
  const double at_s = xm1_exp(s) / s;
  if (u > at_s) {
    // tail branch: u = at_s + (1-e^{-s})(1 - e^{-(t-s)})/s
    const double c = (-std::expm1(-s)) / s;
    const double inner = 1.0 - (u - at_s) / c;
    return s - std::log(inner);
  }
  return invert_increasing_cdf([s](double t) { return smc_cdf(s, t); }, u,
                               1e-300, s,
                               [s](double t) { return smc_jump_density(s, t); });
}

double smc_prime_jump_density(Tmrca s, Tmrca t) {
  require_positive(s, "s");
  require_positive(t, "t");
  const double d = smc_prime_norm(s);
  if (t < s) {
    return 2.0 * (-std::expm1(-2.0 * t)) / d;
  }
  return 2.0 * (-std::expm1(-2.0 * s)) / d * std::exp(-(t - s));
}

double smc_prime_cdf(Tmrca x, Tmrca y) {
  require_positive(x, "x");
  require_positive(y, "y");
  const double d = smc_prime_norm(x);
  if (y < x) {
    // (2y - 1 + e^{-2y}) / D(x)
    return xm1_exp(2.0 * y) / d;
  }
  // 1 - B(x) e^{-y} with B(x) = 2(e^x - e^{-x}) / D(x)
  const double b = 4.0 * std::sinh(x) / d;
  return std::max(0.0, 1.0 - b * std::exp(-y));
}

Tmrca smc_prime_quantile(Tmrca x, double u) {
  require_positive(x, "x");
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("u must be in (0,1)");
  const double d = smc_prime_norm(x);
  const double at_x = xm1_exp(2.0 * x) / d;
  if (u >= at_x) {
    // exponential tail inverts in closed form: y = log(B(x) / (1-u))
    const double b = 4.0 * std::sinh(x) / d;
    return std::log(b / (1.0 - u));
  }
  return invert_increasing_cdf(
      [x](double y) { return smc_prime_cdf(x, y); }, u, 1e-300, x,
      [x](double y) { return smc_prime_jump_density(x, y); });
}

double p_visible(Tmrca s) {
  require_positive(s, "s");
  return smc_prime_norm(s) / (4.0 * s);
}

double visible_jump_rate(Tmrca s) {
  require_positive(s, "s");
  return 0.25 * smc_prime_norm(s);
}

double stationary_density(StationaryLawId law, Tmrca t) {
  require_positive(t, "t");
  switch (law) {
    case StationaryLawId::kMu:
      return t * std::exp(-t);
    case StationaryLawId::kMuPrime:
      return 0.375 * smc_prime_norm(t) * std::exp(-t);
    default:
      return std::exp(-t);
  }
}

double stationary_cdf(StationaryLawId law, Tmrca y) {
  require_positive(y, "y");
  switch (law) {
    case StationaryLawId::kMu:
      return 1.0 - (1.0 + y) * std::exp(-y);
    case StationaryLawId::kMuPrime:
      return 1.0 - 0.375 * (2.0 * y + 3.0) * std::exp(-y) +
             0.125 * std::exp(-3.0 * y);
    default:
      return -std::expm1(-y);
  }
}

Tmrca stationary_quantile(StationaryLawId law, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("u must be in (0,1)");
  if (law == StationaryLawId::kPi) return -std::log1p(-u);
  return invert_increasing_cdf(
      [law](double y) { return stationary_cdf(law, y); }, u, 1e-300, 50.0,
      [law](double y) { return stationary_density(law, y); });
}

Tmrca mean_map(ChainId chain, Tmrca x) {
  require_positive(x, "x");
  if (chain == ChainId::kSmc) {
    return 0.5 * x + 1.0;
  }
  return smc_prime_mean_numer(x) / smc_prime_norm(x);
}

double l1_derivative_norm(ChainId chain, Tmrca x) {
  require_positive(x, "x");
  if (chain == ChainId::kSmc) {
    if (x < 1e-4) {
      // 2 (x - 1 + e^{-x}) / x^2 = 1 - x/3 + x^2/12 - x^3/60 + ...
      return 1.0 + x * (-1.0 / 3.0 + x * (1.0 / 12.0 - x / 60.0));
    }
    return 2.0 * xm1_exp(x) / (x * x);
  }
  const double z = std::exp(-2.0 * x);
  const double d = smc_prime_norm(x);
  // 2x - 1 + z cancels near 0; xm1_exp(2x) = 2x - 1 + e^{-2x} is safe.
  return 4.0 * (1.0 + z) * xm1_exp(2.0 * x) / (d * d);
}

double jump_density(ChainId chain, Tmrca s, Tmrca t) {
  return chain == ChainId::kSmc ? smc_jump_density(s, t)
                                : smc_prime_jump_density(s, t);
}

double jump_cdf(ChainId chain, Tmrca s, Tmrca t) {
  return chain == ChainId::kSmc ? smc_cdf(s, t) : smc_prime_cdf(s, t);
}

Tmrca jump_quantile(ChainId chain, Tmrca s, double u) {
  return chain == ChainId::kSmc ? smc_quantile(s, u) : smc_prime_quantile(s, u);
}

StationaryLawId stationary_law(ChainId chain) {
  return chain == ChainId::kSmc ? StationaryLawId::kMu
                                : StationaryLawId::kMuPrime;
}

}  // namespace smcmix
