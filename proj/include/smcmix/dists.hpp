#pragma once

#include "smcmix/types.hpp"

namespace smcmix {

// Closed-form densities, CDFs, quantiles, stationary laws and per-state
// scalar functions for the SMC and SMC' jump chains. All operations are pure
// and thread-safe; all throw std::domain_error on out-of-domain inputs.

// q_SMC(t | s) = e^{-t} (e^{min(s,t)} - 1) / s
double smc_jump_density(Tmrca s, Tmrca t);

// CDF of q_SMC(. | s).
double smc_cdf(Tmrca s, Tmrca t);

// Inverse of smc_cdf in t.
Tmrca smc_quantile(Tmrca s, double u);

// Two-branch SMC' density: 2(1 - e^{-2t})/D(s) for t < s and
// 2(1 - e^{-2s}) e^{-(t-s)}/D(s) for t >= s, with D(s) = 2s + 1 - e^{-2s}.
// The t = s point is evaluated by the left branch (the branches match).
double smc_prime_jump_density(Tmrca s, Tmrca t);

// F_x(y), the CDF of q_SMC'(. | x). Nonincreasing in x for fixed y.
double smc_prime_cdf(Tmrca x, Tmrca y);

// Inverse of F_x; |F_x(y) - u| <= 1e-10 over the admissible range.
Tmrca smc_prime_quantile(Tmrca x, double u);

// Probability that a recombination at TMRCA s is visible:
// (2s + 1 - e^{-2s}) / (4s), in (1/2, 1].
double p_visible(Tmrca s);

// s * p_visible(s) = s/2 + (1 - e^{-2s})/4, the SMC' holding rate.
double visible_jump_rate(Tmrca s);

// Stationary densities: mu(t) = t e^{-t}, mu'(t) = (3/8)(2t+1-e^{-2t})e^{-t},
// pi(t) = e^{-t}.
double stationary_density(StationaryLawId law, Tmrca t);

// Closed-form antiderivatives of the above.
double stationary_cdf(StationaryLawId law, Tmrca y);

// Numeric inverse of stationary_cdf (exact for PI).
Tmrca stationary_quantile(StationaryLawId law, double u);

// Post-jump conditional mean m(x): x/2 + 1 for SMC,
// (x^2 + 2x + 3/2 - (x + 3/2)e^{-2x}) / D(x) for SMC'.
Tmrca mean_map(ChainId chain, Tmrca x);

// ||d/dx q_x||_{L1} in closed form:
//   SMC : 2 (x - 1 + e^{-x}) / x^2          (<= 5/2 for all x)
//   SMC': 4 (1+z)(2x - 1 + z)/(2x + 1 - z)^2 with z = e^{-2x}   (<= 2)
double l1_derivative_norm(ChainId chain, Tmrca x);

// Dispatches to the chain's jump density / CDF / quantile.
double jump_density(ChainId chain, Tmrca s, Tmrca t);
double jump_cdf(ChainId chain, Tmrca s, Tmrca t);
Tmrca jump_quantile(ChainId chain, Tmrca s, double u);

// The chain's stationary law (kMu or kMuPrime).
StationaryLawId stationary_law(ChainId chain);

}  // namespace smcmix
