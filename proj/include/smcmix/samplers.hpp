#pragma once

#include <optional>
#include <vector>

#include "smcmix/rng.hpp"
#include "smcmix/types.hpp"

namespace smcmix {

// A piecewise-constant trajectory: states[i] holds on
// [jump_locations[i], jump_locations[i+1]), the last segment up to horizon.
// Only visible jumps appear; silent SMC' recombinations never create a
// segment boundary.
struct PathSample {
  std::vector<GeneticDistance> jump_locations;  // ascending, front() == 0
  std::vector<Tmrca> states;                    // same length
  GeneticDistance horizon = 0.0;

  Tmrca value_at(GeneticDistance ell) const;
  std::size_t segment_count() const { return states.size(); }
};

// Two chains driven by shared randomness, with per-step absolute gaps.
struct CoupledTrace {
  std::vector<Tmrca> xs;
  std::vector<Tmrca> ys;
  std::vector<double> abs_gaps;
};

// Length n+1 jump-chain trajectory starting at x0. SMC uses the direct
// U*x + Z recipe; SMC' samples by quantile inversion.
std::vector<Tmrca> sample_jump_chain(ChainId chain, Tmrca x0, int n,
                                     RngStream& rng);

// Diagnostic variant with the uniform recombination fraction forced to 0,
// which makes the SMC chain i.i.d. Exp(1) from step 1 on.
std::vector<Tmrca> sample_smc_jump_chain_zero_uniform(Tmrca x0, int n,
                                                      RngStream& rng);

// Continuous path on [0, horizon]. Holding rate is s for SMC and
// s * p_visible(s) for SMC'.
PathSample sample_path(ChainId chain, Tmrca x0, GeneticDistance horizon,
                       RngStream& rng);

// i.i.d. draws: PI by inverse CDF, MU as a sum of two unit exponentials,
// MU' by numeric inversion of its closed-form CDF.
std::vector<Tmrca> sample_stationary(StationaryLawId law, int count,
                                     RngStream& rng);

// Coupled chains sharing per-step randomness: (U, Z) for SMC, one uniform
// through both quantile functions for SMC'. y0 == nullopt draws Y_0 from the
// chain's stationary law.
CoupledTrace sample_coupled_chains(ChainId chain, Tmrca x0,
                                   std::optional<Tmrca> y0, int n,
                                   RngStream& rng);

// SMC' path built by the random time change C_ell = ell/2 + 2 N_ell of an
// SMC path, N a rate-1/4 Poisson process. Jumps of the inner path skipped by
// a time-change jump are invisible; consecutive equal states merge.
PathSample sample_subordinated_path(Tmrca x0, GeneticDistance horizon,
                                    RngStream& rng);

}  // namespace smcmix
