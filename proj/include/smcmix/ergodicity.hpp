#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smcmix/kernels.hpp"
#include "smcmix/types.hpp"

namespace smcmix {

enum class TvMethod : std::uint8_t {
  kExactFormula,
  kMixedQuadrature,
  kGridQuadrature,
  kEmpiricalHistogram,
};

const char* to_string(TvMethod method);

// Total variation distance with the method used and a numeric error
// estimate. For quadrature methods the estimate is the disagreement of the
// positive- and negative-part masses, which coincide exactly for measures of
// equal total mass.
struct TvResult {
  double value = 0.0;
  TvMethod method = TvMethod::kGridQuadrature;
  double error_estimate = 0.0;
};

// Structured outcome of one theorem-level check.
struct VerificationReport {
  std::string claim_id;
  nlohmann::json inputs;
  double computed = 0.0;
  double bound_or_target = 0.0;
  bool passed = false;
  double tolerance = 0.0;
};

// TV between a mixed measure and an atomless law (the whole atom lands in
// the positive part) or a grid density on the same grid.
TvResult tv_mixed_vs_density(const MixedMeasure& k, StationaryLawId target);
TvResult tv_mixed_vs_density(const MixedMeasure& k, const GridDensity& target);

// TV between a tabulated density and a stationary law, by grid quadrature.
TvResult tv_grid_vs_law(const GridDensity& f, StationaryLawId law);

// Crossing point y* = log(ell) / (ell - 1) where P_ell(x,.) - pi changes
// sign.
double smc_tv_crossing_point(GeneticDistance ell);

// Exact TV of the SMC kernel from stationarity: ell^{-1/(ell-1)} / ell.
// Valid when ell >= 2 and y*(ell) < x; otherwise throws ValidityError.
TvResult smc_tv_exact(Tmrca x, GeneticDistance ell);

// Geometric-ergodicity bounds for the jump chains:
// 5(x+2)/2^{n+1} for SMC, (x + 11/6)/2^{n-1} for SMC'.
double jump_bound(ChainId chain, Tmrca x, int n);

// TV between the n-step jump-chain law from x and the chain's stationary
// law. n = 0 returns exactly 1 (point mass against a continuous law).
TvResult jump_tv_numeric(ChainId chain, Tmrca x, int n, const GridSpec& grid);

// Same, reusing a prebuilt operator (the grid kink must be at x).
TvResult jump_tv_numeric(const JumpKernelOperator& op, Tmrca x, int n);

// L1 distance between two jump densities of the same chain.
double l1_jump_distance(ChainId chain, Tmrca a, Tmrca b);

// Checks the L1-Lipschitz property int |q_a - q_b| <= L |a - b| over the
// given pairs; L defaults to 5/2 (SMC) or 2 (SMC') and may be overridden
// (e.g. for mutation tests).
VerificationReport lipschitz_check(ChainId chain,
                                   const std::vector<std::pair<Tmrca, Tmrca>>& pairs,
                                   std::optional<double> l_override = {});

// TV(P'_ell(x,.), pi) <= 2/ell once the exact-formula regime holds at
// ell/2. Throws ValidityError outside that regime.
VerificationReport smc_prime_tv_upper(Tmrca x, GeneticDistance ell,
                                      const GridSpec& grid,
                                      double tail_tol = 1e-10);

// Lower-bound witness pi(A_ell) - P'_ell(x, A_ell) >= (2/(3 ell)) C
// P(C_ell in I_ell) with C = 1/(2 e^2), A_ell = (0, 2/(3 ell)),
// I_ell = [ell/2, 3 ell/2]. Requires A_ell in (0, x) and ell >= 4e.
VerificationReport smc_prime_tv_lower_witness(Tmrca x, GeneticDistance ell);

// Exact Poisson probability of C_ell = ell/2 + 2 N_ell landing in I_ell.
double subordinator_in_window_probability(GeneticDistance ell);

// Least-squares slope of log(tv) against log(ell).
double decay_slope(const std::vector<std::pair<double, double>>& points);

// TV discrepancy between P_{ell1} P_{ell2} and P_{ell1+ell2} (grid
// composition; atoms handled exactly).
double chapman_kolmogorov_tv(Tmrca x, GeneticDistance ell1,
                             GeneticDistance ell2, const GridSpec& grid);

// TV between the pushforward of pi through the SMC kernel and pi itself.
double pi_stationarity_tv(GeneticDistance ell, const GridSpec& grid);

// Configuration for the deterministic verification suite. Tolerances are
// named budgets; entries override the built-in defaults.
struct SuiteConfig {
  GridSpec grid;
  std::map<std::string, double> tolerances;
  std::vector<std::string> only;  // run only these claim ids (empty = all)
  std::uint64_t seed = 0;         // recorded in reports for provenance
};

// All registered claim ids, in report order.
std::vector<std::string> registered_claims();

// Runs every registered claim (or the configured subset). Failures are
// reported, never thrown.
std::vector<VerificationReport> run_verification_suite(const SuiteConfig& config);

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_table(const std::vector<VerificationReport>& reports);

}  // namespace smcmix
