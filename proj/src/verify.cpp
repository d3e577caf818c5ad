#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "smcmix/dists.hpp"
#include "smcmix/ergodicity.hpp"
#include "smcmix/errors.hpp"
#include "smcmix/math.hpp"
#include "smcmix/quadrature.hpp"

namespace smcmix {

namespace {

double tol_of(const SuiteConfig& cfg, const std::string& name, double fallback) {
  const auto it = cfg.tolerances.find(name);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo * std::pow(hi / lo, n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
  }
  return xs;
}

VerificationReport make_report(std::string id, nlohmann::json inputs,
                               double computed, double target, double tol,
                               bool passed) {
  VerificationReport r;
  r.claim_id = std::move(id);
  r.inputs = std::move(inputs);
  r.computed = computed;
  r.bound_or_target = target;
  r.tolerance = tol;
  r.passed = passed;
  return r;
}

// "computed <= target + tol" convention for bound-style claims.
VerificationReport bound_report(std::string id, nlohmann::json inputs,
                                double computed, double bound, double tol) {
  const bool pass = computed <= bound + tol;
  return make_report(std::move(id), std::move(inputs), computed, bound, tol,
                     pass);
}

double density_normalization_error(ChainId chain, double s) {
  const double mass = integrate_with_breaks(
      [&](double t) { return jump_density(chain, s, t); }, 1e-14,
      std::max(60.0, s + 60.0), {s}, 1e-12);
  return std::fabs(mass - 1.0);
}

using ClaimFn = std::function<VerificationReport(const SuiteConfig&)>;

struct Claim {
  const char* id;
  ClaimFn run;
};

VerificationReport claim_density_normalization(const SuiteConfig& cfg,
                                               ChainId chain) {
  double worst = 0.0;
  const auto ss = log_grid(1e-2, 1e2, 9);
  for (double s : ss) {
    worst = std::max(worst, density_normalization_error(chain, s));
  }
  return bound_report(std::string(to_string(chain)) + "_density_normalization",
                      {{"s_grid", ss}}, worst, 0.0,
                      tol_of(cfg, "quadrature", 1e-9));
}

VerificationReport claim_branch_matching(const SuiteConfig& cfg) {
  double worst = 0.0;
  for (double s : {0.01, 1.0, 10.0}) {
    const double left = smc_prime_jump_density(s, s * (1.0 - 1e-13));
    const double right = smc_prime_jump_density(s, s * (1.0 + 1e-13));
    worst = std::max(worst, std::fabs(left - right));
  }
  return bound_report("smc_prime_branch_matching", {{"s", {0.01, 1.0, 10.0}}},
                      worst, 0.0, tol_of(cfg, "match", 1e-12));
}

VerificationReport claim_detailed_balance(const SuiteConfig& cfg,
                                          ChainId chain) {
  const auto grid = log_grid(1e-2, 20.0, 8);
  double worst = 0.0;
  for (double s : grid) {
    for (double t : grid) {
      const double lhs =
          stationary_density(stationary_law(chain), s) * jump_density(chain, s, t);
      const double rhs =
          stationary_density(stationary_law(chain), t) * jump_density(chain, t, s);
      const double mn = std::min(s, t);
      const double mx = std::max(s, t);
      const double closed =
          chain == ChainId::kSmc
              ? std::exp(-s - t) * (std::exp(mn) - 1.0)
              : 0.75 * (-std::expm1(-2.0 * mn)) * std::exp(-mx);
      worst = std::max({worst, std::fabs(lhs - rhs), std::fabs(lhs - closed)});
    }
  }
  return bound_report(std::string(to_string(chain)) + "_detailed_balance",
                      {{"grid", grid}}, worst, 0.0,
                      tol_of(cfg, "match", 1e-12));
}

VerificationReport claim_stationarity(const SuiteConfig& cfg, ChainId chain) {
  const auto ts = log_grid(5e-2, 10.0, 9);
  const auto law = stationary_law(chain);
  double worst = 0.0;
  for (double t : ts) {
    const double mixed = integrate_with_breaks(
        [&](double s) {
          return stationary_density(law, s) * jump_density(chain, s, t);
        },
        1e-14, 60.0, {t}, 1e-11);
    worst = std::max(worst, std::fabs(mixed - stationary_density(law, t)));
  }
  return bound_report(std::string(to_string(chain)) + "_stationarity",
                      {{"t_grid", ts}}, worst, 0.0,
                      tol_of(cfg, "density", 1e-7));
}

VerificationReport claim_stationary_means(const SuiteConfig& cfg) {
  const auto mass = [](StationaryLawId law) {
    return integrate_adaptive(
        [&](double t) { return stationary_density(law, t); }, 1e-14, 40.0,
        1e-13);
  };
  const auto mean = [](StationaryLawId law) {
    return integrate_adaptive(
        [&](double t) { return t * stationary_density(law, t); }, 1e-14, 40.0,
        1e-13);
  };
  double worst = 0.0;
  worst = std::max(worst, std::fabs(mass(StationaryLawId::kMu) - 1.0));
  worst = std::max(worst, std::fabs(mass(StationaryLawId::kMuPrime) - 1.0));
  worst = std::max(worst, std::fabs(mass(StationaryLawId::kPi) - 1.0));
  worst = std::max(worst, std::fabs(mean(StationaryLawId::kMu) - 2.0));
  worst = std::max(worst,
                   std::fabs(mean(StationaryLawId::kMuPrime) - 11.0 / 6.0));
  return bound_report("stationary_normalization_and_means",
                      {{"laws", {"mu", "mu-prime", "pi"}}}, worst, 0.0,
                      tol_of(cfg, "mean", 1e-10));
}

VerificationReport claim_p_visible_bounds(const SuiteConfig&) {
  const auto ss = log_grid(1e-3, 1e3, 61);
  double min_margin = 1.0;
  for (double s : ss) {
    const double p = p_visible(s);
    min_margin = std::min({min_margin, p - 0.5, 1.0 - p});
    const double rate_diff = std::fabs(
        visible_jump_rate(s) - (0.5 * s - 0.25 * std::expm1(-2.0 * s)));
    min_margin = std::min(min_margin, 1e-15 - rate_diff);
  }
  return make_report("p_visible_bounds", {{"s_grid_size", ss.size()}},
                     min_margin, 0.0, 0.0, min_margin >= 0.0);
}

VerificationReport claim_mean_contraction(const SuiteConfig& cfg,
                                          ChainId chain) {
  const auto xs = log_grid(1e-2, 1e2, 41);
  double sup = 0.0;
  for (double x : xs) {
    const double delta = 1e-6 * std::max(1.0, x);
    const double deriv =
        (mean_map(chain, x + delta) - mean_map(chain, x - delta)) /
        (2.0 * delta);
    sup = std::max(sup, deriv);
  }
  return bound_report(std::string(to_string(chain)) + "_mean_contraction",
                      {{"x_grid_size", xs.size()}}, sup, 0.5,
                      tol_of(cfg, "fd", 1e-8));
}

VerificationReport claim_stochastic_monotonicity(const SuiteConfig& cfg) {
  const auto xs = log_grid(1e-2, 50.0, 25);
  const auto ys = log_grid(1e-2, 50.0, 25);
  double worst = -1.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (double y : ys) {
      worst = std::max(worst,
                       smc_prime_cdf(xs[i + 1], y) - smc_prime_cdf(xs[i], y));
    }
  }
  return bound_report("smc_prime_stochastic_monotonicity",
                      {{"grid", "25x25 log"}}, worst, 0.0,
                      tol_of(cfg, "monotone", 1e-12));
}

VerificationReport claim_l1_derivative_bound(const SuiteConfig&,
                                             ChainId chain) {
  const auto xs = log_grid(1e-3, 1e3, 121);
  double sup = 0.0;
  for (double x : xs) sup = std::max(sup, l1_derivative_norm(chain, x));
  const double bound = chain == ChainId::kSmc ? 2.5 : 2.0;
  return bound_report(
      std::string(to_string(chain)) + "_l1_derivative_bound",
      {{"x_grid_size", xs.size()}, {"bound", bound}}, sup, bound, 0.0);
}

std::vector<std::pair<Tmrca, Tmrca>> lipschitz_pairs() {
  const auto xs = log_grid(5e-2, 20.0, 8);
  std::vector<std::pair<Tmrca, Tmrca>> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      pairs.emplace_back(xs[i], xs[j]);
    }
  }
  for (double x : {0.1, 1.0, 5.0}) pairs.emplace_back(x, x * (1.0 + 1e-5));
  return pairs;
}

VerificationReport claim_l1_lipschitz(const SuiteConfig& cfg, ChainId chain) {
  auto report = lipschitz_check(chain, lipschitz_pairs());
  report.tolerance = tol_of(cfg, "lipschitz", 1e-6);
  report.passed = report.computed <= report.bound_or_target + report.tolerance;
  return report;
}

VerificationReport claim_l1_smallgap(const SuiteConfig& cfg, ChainId chain) {
  double worst = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double b = x * (1.0 + 1e-5);
    const double ratio = l1_jump_distance(chain, x, b) / (b - x);
    worst = std::max(worst, std::fabs(ratio - l1_derivative_norm(chain, x)));
  }
  return bound_report(
      std::string(to_string(chain)) + "_l1_smallgap_consistency",
      {{"gap", 1e-5}}, worst, 0.0, tol_of(cfg, "smallgap", 1e-4));
}

VerificationReport claim_kernel_mass(const SuiteConfig& cfg) {
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    for (double ell : {0.0, 0.5, 1.0, 3.0, 10.0}) {
      const auto k = smc_kernel(x, ell, cfg.grid);
      worst = std::max(worst, std::fabs(k.total_mass() - 1.0));
      const auto kp = smc_prime_kernel(x, ell, cfg.grid, 1e-10);
      worst = std::max(worst, std::fabs(kp.total_mass() - 1.0) - kp.truncation_tail);
    }
  }
  return bound_report("kernel_mixed_measure_mass", {{"x", {0.5, 1.0, 2.0}}},
                      worst, 0.0, tol_of(cfg, "mass", 1e-8));
}

VerificationReport claim_chapman_kolmogorov(const SuiteConfig& cfg) {
  double worst = 0.0;
  worst = std::max(worst, chapman_kolmogorov_tv(1.0, 0.7, 1.3, cfg.grid));
  worst = std::max(worst, chapman_kolmogorov_tv(0.5, 1.0, 1.0, cfg.grid));
  worst = std::max(worst, chapman_kolmogorov_tv(2.0, 2.0, 3.0, cfg.grid));
  return bound_report("smc_kernel_chapman_kolmogorov",
                      {{"cases", 3}}, worst, 0.0, tol_of(cfg, "ck", 1e-5));
}

VerificationReport claim_pi_stationarity(const SuiteConfig& cfg) {
  double worst = 0.0;
  for (double ell : {0.5, 1.0, 5.0}) {
    worst = std::max(worst, pi_stationarity_tv(ell, cfg.grid));
  }
  return bound_report("smc_kernel_pi_stationarity", {{"ell", {0.5, 1.0, 5.0}}},
                      worst, 0.0, tol_of(cfg, "tv", 1e-6));
}

VerificationReport claim_laplace_consistency(const SuiteConfig& cfg) {
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    for (double ell : {0.5, 2.0, 5.0}) {
      for (double lambda : {0.5, 1.0, 3.0}) {
        const double transform =
            smc_kernel_atom(x, ell) * std::exp(-lambda * x) +
            integrate_with_breaks(
                [&](double y) {
                  return smc_kernel_density(x, ell, y) * std::exp(-lambda * y);
                },
                1e-14, cfg.grid.t_max, {x}, 1e-10);
        worst = std::max(worst,
                         std::fabs(transform - smc_laplace(x, ell, lambda)));
      }
    }
  }
  return bound_report("laplace_transform_consistency", {{"grid", "3x3x3"}},
                      worst, 0.0, tol_of(cfg, "laplace", 1e-6));
}

VerificationReport claim_pde_residual(const SuiteConfig& cfg) {
  double worst = 0.0;
  const double h = 1e-4;
  for (double x : {0.5, 1.0, 2.0}) {
    for (double ell : {0.5, 1.0, 2.0}) {
      for (double lambda : {0.5, 1.0, 2.0}) {
        worst = std::max(worst,
                         std::fabs(transport_pde_residual(x, ell, lambda, h)));
      }
    }
  }
  return bound_report("laplace_pde_residual", {{"h", h}}, worst, 0.0,
                      tol_of(cfg, "pde", 1e-6));
}

VerificationReport claim_generator_limit(const SuiteConfig& cfg) {
  const double ell0 = 1e-6;
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    for (double lambda : {0.5, 1.0, 3.0}) {
      const double lhs =
          (smc_laplace(x, ell0, lambda) - std::exp(-lambda * x)) / ell0;
      const double rhs = (-std::expm1(-lambda * x)) /
                             (lambda * (1.0 + lambda)) -
                         x * std::exp(-lambda * x);
      worst = std::max(worst, std::fabs(lhs - rhs));
    }
  }
  return bound_report("laplace_generator_limit", {{"ell0", ell0}}, worst, 0.0,
                      tol_of(cfg, "genlim", 1e-4));
}

VerificationReport claim_atom_identity(const SuiteConfig& cfg) {
  double worst = 0.0;
  for (double x : log_grid(1e-2, 50.0, 21)) {
    for (double ell : log_grid(1e-2, 2e3, 21)) {
      const double direct = smc_prime_kernel_atom(x, ell);
      const double via_rate = std::exp(-ell * x * p_visible(x));
      worst = std::max(worst, std::fabs(direct - via_rate));
    }
  }
  return bound_report("subordination_atom_identity", {{"grid", "21x21 log"}},
                      worst, 0.0, tol_of(cfg, "atom", 1e-13));
}

VerificationReport claim_tv_exact_vs_quadrature(const SuiteConfig& cfg) {
  double worst = 0.0;
  double worst_masszero = 0.0;
  std::vector<std::pair<double, double>> cases = {
      {1.0, 2.0}, {1.0, 5.0}, {1.0, 10.0}, {1.0, 100.0}, {2.0, 3.0}};
  for (const auto& [x, ell] : cases) {
    const auto exact = smc_tv_exact(x, ell);
    const auto quad = tv_mixed_vs_density(smc_kernel(x, ell, cfg.grid),
                                          StationaryLawId::kPi);
    worst = std::max(worst, std::fabs(exact.value - quad.value));
    worst_masszero = std::max(worst_masszero, quad.error_estimate);
  }
  const double tol = tol_of(cfg, "tv", 1e-6);
  const bool pass = worst <= tol && worst_masszero <= 1e-9;
  auto report = make_report("smc_tv_exact_vs_quadrature",
                            {{"cases", cases.size()},
                             {"mass_zero_defect", worst_masszero}},
                            worst, 0.0, tol, pass);
  return report;
}

VerificationReport claim_tv_sandwich(const SuiteConfig&) {
  double min_margin = 1.0;
  for (double x : {0.8, 1.0, 2.0, 5.0}) {
    for (double ell : {2.0, 5.0, 10.0, 100.0, 1000.0}) {
      if (smc_tv_crossing_point(ell) >= x) continue;
      const double tv = smc_tv_exact(x, ell).value;
      min_margin = std::min({min_margin, tv - 0.5 / ell, 1.0 / ell - tv});
    }
  }
  return make_report("smc_tv_sandwich", {{"note", "1/(2l) <= tv <= 1/l"}},
                     min_margin, 0.0, 0.0, min_margin >= 0.0);
}

VerificationReport claim_tv_sign_structure(const SuiteConfig& cfg) {
  // signed density p_ell(x,.) - pi is <= 0 below y* and >= 0 above it
  double worst = 0.0;
  for (double ell : {2.0, 5.0, 20.0}) {
    const double x = 1.0;
    const double y_star = smc_tv_crossing_point(ell);
    for (double frac : {0.05, 0.3, 0.7, 0.95}) {
      const double below = y_star * frac;
      const double diff_below =
          smc_kernel_density(x, ell, below) - std::exp(-below);
      worst = std::max(worst, diff_below);  // should be <= 0
      const double above = y_star + frac * (cfg.grid.t_max - y_star) * 0.5;
      const double diff_above =
          smc_kernel_density(x, ell, above) - std::exp(-above);
      worst = std::max(worst, -diff_above);  // should be >= 0
    }
  }
  return bound_report("smc_tv_sign_structure", {{"x", 1.0}}, worst, 0.0,
                      tol_of(cfg, "monotone", 1e-12));
}

VerificationReport claim_jump_dominance(const SuiteConfig& cfg, ChainId chain) {
  double worst = -1.0;
  nlohmann::json tested = nlohmann::json::array();
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    JumpKernelOperator op(chain, cfg.grid, x);
    for (int n = 1; n <= 12; ++n) {
      const auto tv = jump_tv_numeric(op, x, n);
      worst = std::max(worst, tv.value - jump_bound(chain, x, n));
    }
    tested.push_back(x);
  }
  return bound_report(
      std::string(to_string(chain)) + "_jump_tv_dominance",
      {{"x", tested}, {"n", "1..12"}}, worst, 0.0, tol_of(cfg, "tv", 1e-6));
}

VerificationReport claim_smc_slope(const SuiteConfig& cfg) {
  std::vector<std::pair<double, double>> pts;
  for (double ell : log_grid(10.0, 1000.0, 13)) {
    pts.emplace_back(ell, smc_tv_exact(1.0, ell).value);
  }
  const double slope = decay_slope(pts);
  return bound_report("smc_tv_decay_slope", {{"ell_range", {10.0, 1000.0}}},
                      std::fabs(slope + 1.0), 0.0,
                      tol_of(cfg, "slope_exact", 0.02));
}

VerificationReport claim_smc_prime_upper(const SuiteConfig& cfg) {
  double worst = 0.0;
  for (double ell : {20.0, 50.0, 100.0}) {
    const auto rep = smc_prime_tv_upper(1.0, ell, cfg.grid);
    worst = std::max(worst, rep.computed * ell);
  }
  return bound_report("smc_prime_tv_upper", {{"x", 1.0}, {"ell", {20.0, 50.0, 100.0}}},
                      worst, 2.0, tol_of(cfg, "tv", 1e-6));
}

VerificationReport claim_smc_prime_lower_guard(const SuiteConfig& cfg) {
  double min_scaled = 1e30;
  for (double ell : {20.0, 50.0, 100.0}) {
    const auto kernel = smc_prime_kernel(1.0, ell, cfg.grid, 1e-10);
    const auto tv = tv_mixed_vs_density(kernel, StationaryLawId::kPi);
    min_scaled = std::min(min_scaled, tv.value * ell);
  }
  return make_report("smc_prime_tv_lower_guard",
                     {{"x", 1.0}, {"ell", {20.0, 50.0, 100.0}}}, min_scaled,
                     0.25, 0.0, min_scaled >= 0.25);
}

VerificationReport claim_smc_prime_slope(const SuiteConfig& cfg) {
  std::vector<std::pair<double, double>> pts;
  for (double ell : log_grid(20.0, 2000.0, 9)) {
    const auto kernel = smc_prime_kernel(1.0, ell, cfg.grid, 1e-10);
    pts.emplace_back(ell,
                     tv_mixed_vs_density(kernel, StationaryLawId::kPi).value);
  }
  const double slope = decay_slope(pts);
  return bound_report("smc_prime_tv_decay_slope",
                      {{"ell_range", {20.0, 2000.0}}},
                      std::fabs(slope + 1.0), 0.0, tol_of(cfg, "slope", 0.05));
}

VerificationReport claim_lower_witness(const SuiteConfig&) {
  double min_margin = 1e30;
  double min_chebyshev = 1e30;
  for (double ell : {50.0, 200.0}) {
    const auto rep = smc_prime_tv_lower_witness(1.0, ell);
    min_margin = std::min(min_margin, rep.computed - rep.bound_or_target);
    const double p = rep.inputs.at("p_window").get<double>();
    min_chebyshev = std::min(min_chebyshev, p - (1.0 - 4.0 / ell));
  }
  const bool pass = min_margin >= 0.0 && min_chebyshev >= 0.0;
  return make_report("smc_prime_tv_lower_witness",
                     {{"x", 1.0},
                      {"ell", {50.0, 200.0}},
                      {"chebyshev_margin", min_chebyshev}},
                     min_margin, 0.0, 0.0, pass);
}

const std::vector<Claim>& claim_registry() {
  static const std::vector<Claim> claims = {
      {"smc_density_normalization",
       [](const SuiteConfig& c) {
         return claim_density_normalization(c, ChainId::kSmc);
       }},
      {"smc_prime_density_normalization",
       [](const SuiteConfig& c) {
         return claim_density_normalization(c, ChainId::kSmcPrime);
       }},
      {"smc_prime_branch_matching", claim_branch_matching},
      {"smc_detailed_balance",
       [](const SuiteConfig& c) {
         return claim_detailed_balance(c, ChainId::kSmc);
       }},
      {"smc_prime_detailed_balance",
       [](const SuiteConfig& c) {
         return claim_detailed_balance(c, ChainId::kSmcPrime);
       }},
      {"smc_stationarity",
       [](const SuiteConfig& c) { return claim_stationarity(c, ChainId::kSmc); }},
      {"smc_prime_stationarity",
       [](const SuiteConfig& c) {
         return claim_stationarity(c, ChainId::kSmcPrime);
       }},
      {"stationary_normalization_and_means", claim_stationary_means},
      {"p_visible_bounds", claim_p_visible_bounds},
      {"smc_mean_contraction",
       [](const SuiteConfig& c) {
         return claim_mean_contraction(c, ChainId::kSmc);
       }},
      {"smc_prime_mean_contraction",
       [](const SuiteConfig& c) {
         return claim_mean_contraction(c, ChainId::kSmcPrime);
       }},
      {"smc_prime_stochastic_monotonicity", claim_stochastic_monotonicity},
      {"smc_l1_derivative_bound",
       [](const SuiteConfig& c) {
         return claim_l1_derivative_bound(c, ChainId::kSmc);
       }},
      {"smc_prime_l1_derivative_bound",
       [](const SuiteConfig& c) {
         return claim_l1_derivative_bound(c, ChainId::kSmcPrime);
       }},
      {"smc_l1_lipschitz",
       [](const SuiteConfig& c) { return claim_l1_lipschitz(c, ChainId::kSmc); }},
      {"smc_prime_l1_lipschitz",
       [](const SuiteConfig& c) {
         return claim_l1_lipschitz(c, ChainId::kSmcPrime);
       }},
      {"smc_l1_smallgap_consistency",
       [](const SuiteConfig& c) { return claim_l1_smallgap(c, ChainId::kSmc); }},
      {"smc_prime_l1_smallgap_consistency",
       [](const SuiteConfig& c) {
         return claim_l1_smallgap(c, ChainId::kSmcPrime);
       }},
      {"kernel_mixed_measure_mass", claim_kernel_mass},
      {"smc_kernel_chapman_kolmogorov", claim_chapman_kolmogorov},
      {"smc_kernel_pi_stationarity", claim_pi_stationarity},
      {"laplace_transform_consistency", claim_laplace_consistency},
      {"laplace_pde_residual", claim_pde_residual},
      {"laplace_generator_limit", claim_generator_limit},
      {"subordination_atom_identity", claim_atom_identity},
      {"smc_tv_exact_vs_quadrature", claim_tv_exact_vs_quadrature},
      {"smc_tv_sandwich", claim_tv_sandwich},
      {"smc_tv_sign_structure", claim_tv_sign_structure},
      {"smc_jump_tv_dominance",
       [](const SuiteConfig& c) {
         return claim_jump_dominance(c, ChainId::kSmc);
       }},
      {"smc_prime_jump_tv_dominance",
       [](const SuiteConfig& c) {
         return claim_jump_dominance(c, ChainId::kSmcPrime);
       }},
      {"smc_tv_decay_slope", claim_smc_slope},
      {"smc_prime_tv_upper", claim_smc_prime_upper},
      {"smc_prime_tv_lower_guard", claim_smc_prime_lower_guard},
      {"smc_prime_tv_decay_slope", claim_smc_prime_slope},
      {"smc_prime_tv_lower_witness", claim_lower_witness},
  };
  return claims;
}

}  // namespace

std::vector<std::string> registered_claims() {
  std::vector<std::string> ids;
  for (const auto& claim : claim_registry()) ids.emplace_back(claim.id);
  return ids;
}

std::vector<VerificationReport> run_verification_suite(const SuiteConfig& config) {
  std::vector<VerificationReport> reports;
  for (const auto& claim : claim_registry()) {
    if (!config.only.empty() &&
        std::find(config.only.begin(), config.only.end(), claim.id) ==
            config.only.end()) {
      continue;
    }
    try {
      auto report = claim.run(config);
      report.claim_id = claim.id;  // registry id is canonical
      reports.push_back(std::move(report));
    } catch (const std::exception& e) {
      // a throwing check is a failed check, never an aborted suite
      VerificationReport report;
      report.claim_id = claim.id;
      report.inputs = {{"error", e.what()}};
      report.computed = std::nan("");
      report.bound_or_target = 0.0;
      report.tolerance = 0.0;
      report.passed = false;
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) {
    out.push_back({{"claim_id", r.claim_id},
                   {"inputs", r.inputs},
                   {"computed", r.computed},
                   {"bound_or_target", r.bound_or_target},
                   {"passed", r.passed},
                   {"tolerance", r.tolerance}});
  }
  return out;
}

std::string reports_to_table(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os.precision(6);
  std::size_t width = 12;
  for (const auto& r : reports) width = std::max(width, r.claim_id.size());
  for (const auto& r : reports) {
    os << (r.passed ? "PASS  " : "FAIL  ") << r.claim_id;
    for (std::size_t i = r.claim_id.size(); i < width + 2; ++i) os << ' ';
    os << "computed=" << r.computed << "  target=" << r.bound_or_target
       << "  tol=" << r.tolerance << '\n';
  }
  return os.str();
}

}  // namespace smcmix
