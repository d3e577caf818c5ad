#include "smcmix/ergodicity.hpp"

#include <algorithm>
#include <cmath>

#include "smcmix/dists.hpp"
#include "smcmix/errors.hpp"
#include "smcmix/math.hpp"
#include "smcmix/quadrature.hpp"

namespace smcmix {

namespace {

constexpr double kE = 2.718281828459045;

struct SignedParts {
  double positive = 0.0;
  double negative = 0.0;
};

// Positive/negative parts of (density - law) over (0, t_max), adaptively,
// with panel splits at the known kinks.
SignedParts signed_parts_fn(const std::function<double(double)>& density,
                            StationaryLawId law, double t_max,
                            std::vector<double> breaks) {
  const auto pos = [&](double y) {
    return std::max(density(y) - stationary_density(law, y), 0.0);
  };
  const auto neg = [&](double y) {
    return std::max(stationary_density(law, y) - density(y), 0.0);
  };
  SignedParts parts;
  parts.positive = integrate_with_breaks(pos, 1e-14, t_max, breaks, 1e-10);
  parts.negative = integrate_with_breaks(neg, 1e-14, t_max, breaks, 1e-10);
  return parts;
}

}  // namespace

const char* to_string(TvMethod method) {
  switch (method) {
    case TvMethod::kExactFormula:
      return "exact_formula";
    case TvMethod::kMixedQuadrature:
      return "mixed_quadrature";
    case TvMethod::kGridQuadrature:
      return "grid_quadrature";
    default:
      return "empirical_histogram";
  }
}

TvResult tv_mixed_vs_density(const MixedMeasure& k, StationaryLawId target) {
  if (!k.density_fn) {
    throw GridError("tv_mixed_vs_density: kernel lacks a density evaluator");
  }
  const double t_max = k.density.grid.boundaries.back();
  auto parts = signed_parts_fn(k.density_fn, target, t_max, {k.atom_location});
  // an atomless target cannot match the atom, so it is all positive part
  parts.positive += k.atom_mass;
  TvResult tv;
  tv.method = TvMethod::kMixedQuadrature;
  tv.value = std::max(parts.positive, parts.negative);
  tv.error_estimate =
      std::fabs(parts.positive - parts.negative) + k.truncation_tail;
  return tv;
}

TvResult tv_mixed_vs_density(const MixedMeasure& k, const GridDensity& target) {
  if (k.density.grid.nodes != target.grid.nodes) {
    throw GridError("tv_mixed_vs_density: incompatible grids");
  }
  SignedParts parts;
  for (std::size_t i = 0; i < target.values.size(); ++i) {
    const double diff = k.density.values[i] - target.values[i];
    const double w = target.grid.weights[i];
    if (diff > 0.0) {
      parts.positive += w * diff;
    } else {
      parts.negative -= w * diff;
    }
  }
  parts.positive += k.atom_mass;
  TvResult tv;
  tv.method = TvMethod::kGridQuadrature;
  tv.value = std::max(parts.positive, parts.negative);
  tv.error_estimate =
      std::fabs(parts.positive - parts.negative) + k.truncation_tail;
  return tv;
}

TvResult tv_grid_vs_law(const GridDensity& f, StationaryLawId law) {
  SignedParts parts;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double diff =
        f.values[i] - stationary_density(law, f.grid.nodes[i]);
    const double w = f.grid.weights[i];
    if (diff > 0.0) {
      parts.positive += w * diff;
    } else {
      parts.negative -= w * diff;
    }
  }
  // law mass beyond the grid, unmatched by f
  parts.negative += 1.0 - stationary_cdf(law, f.grid.boundaries.back());
  TvResult tv;
  tv.method = TvMethod::kGridQuadrature;
  tv.value = std::max(parts.positive, parts.negative);
  tv.error_estimate = std::fabs(parts.positive - parts.negative);
  return tv;
}

double smc_tv_crossing_point(GeneticDistance ell) {
  require_nonnegative(ell, "ell");
  if (std::fabs(ell - 1.0) < 1e-9) return 1.0;  // limit of log(l)/(l-1)
  return std::log(ell) / (ell - 1.0);
}

TvResult smc_tv_exact(Tmrca x, GeneticDistance ell) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  const double y_star = smc_tv_crossing_point(ell);
  if (ell < 2.0 || y_star >= x) {
    throw ValidityError(
        "smc_tv_exact: asymptotic regime not reached (needs ell >= 2 and "
        "log(ell)/(ell-1) < x)");
  }
  TvResult tv;
  tv.method = TvMethod::kExactFormula;
  tv.value = std::pow(ell, -1.0 / (ell - 1.0)) / ell;
  tv.error_estimate = 0.0;
  return tv;
}

double jump_bound(ChainId chain, Tmrca x, int n) {
  require_positive(x, "x");
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (chain == ChainId::kSmc) {
    return 5.0 * (x + 2.0) * std::exp2(-(n + 1.0));
  }
  return (x + 11.0 / 6.0) * std::exp2(-(n - 1.0));
}

TvResult jump_tv_numeric(ChainId chain, Tmrca x, int n, const GridSpec& grid) {
  require_positive(x, "x");
  if (n < 0) throw std::domain_error("n must be >= 0");
  if (n == 0) {
    return TvResult{1.0, TvMethod::kExactFormula, 0.0};
  }
  return tv_grid_vs_law(jump_kernel_power(chain, x, n, grid),
                        stationary_law(chain));
}

TvResult jump_tv_numeric(const JumpKernelOperator& op, Tmrca x, int n) {
  if (n == 0) return TvResult{1.0, TvMethod::kExactFormula, 0.0};
  return tv_grid_vs_law(op.n_step_from(x, n), stationary_law(op.chain()));
}

double l1_jump_distance(ChainId chain, Tmrca a, Tmrca b) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (a == b) return 0.0;
  const auto integrand = [&](double t) {
    return std::fabs(jump_density(chain, a, t) - jump_density(chain, b, t));
  };
  // kinks of the two densities sit at t = a and t = b
  return integrate_with_breaks(integrand, 1e-14, 60.0 + std::max(a, b),
                               {std::min(a, b), std::max(a, b)}, 1e-12);
}

VerificationReport lipschitz_check(
    ChainId chain, const std::vector<std::pair<Tmrca, Tmrca>>& pairs,
    std::optional<double> l_override) {
  const double l_const =
      l_override ? *l_override : (chain == ChainId::kSmc ? 2.5 : 2.0);
  double sup_ratio = 0.0;
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    sup_ratio = std::max(sup_ratio,
                         l1_jump_distance(chain, a, b) / std::fabs(a - b));
  }
  VerificationReport report;
  report.claim_id = chain == ChainId::kSmc ? "smc_l1_lipschitz"
                                           : "smc_prime_l1_lipschitz";
  report.inputs = {{"chain", to_string(chain)},
                   {"pairs", pairs.size()},
                   {"L", l_const}};
  report.computed = sup_ratio;
  report.bound_or_target = l_const;
  report.tolerance = 1e-6;
  report.passed = sup_ratio <= l_const + report.tolerance;
  return report;
}

VerificationReport smc_prime_tv_upper(Tmrca x, GeneticDistance ell,
                                      const GridSpec& grid, double tail_tol) {
  require_positive(x, "x");
  require_positive(ell, "ell");
  // C_ell >= ell/2 a.s., so the exact-formula regime must hold at ell/2.
  (void)smc_tv_exact(x, 0.5 * ell);
  const auto kernel = smc_prime_kernel(x, ell, grid, tail_tol);
  const auto tv = tv_mixed_vs_density(kernel, StationaryLawId::kPi);
  VerificationReport report;
  report.claim_id = "smc_prime_tv_upper";
  report.inputs = {{"x", x}, {"ell", ell}, {"tail_tol", tail_tol}};
  report.computed = tv.value;
  report.bound_or_target = 2.0 / ell;
  report.tolerance = 1e-6 + tv.error_estimate;
  report.passed = tv.value <= report.bound_or_target + report.tolerance;
  return report;
}

double subordinator_in_window_probability(GeneticDistance ell) {
  require_positive(ell, "ell");
  // C_ell in [ell/2, 3 ell/2]  <=>  N_ell <= ell/2, N_ell ~ Poisson(ell/4)
  const auto trunc = truncate_poisson(0.25 * ell, 1e-14);
  const auto k_max = static_cast<std::size_t>(std::floor(0.5 * ell));
  double prob = 0.0;
  for (std::size_t k = 0; k < trunc.pmf.size() && k <= k_max; ++k) {
    prob += trunc.pmf[k];
  }
  return std::min(prob, 1.0);
}

VerificationReport smc_prime_tv_lower_witness(Tmrca x, GeneticDistance ell) {
  require_positive(x, "x");
  require_positive(ell, "ell");
  const double a_right = 2.0 / (3.0 * ell);
  if (!(a_right < x)) {
    throw ValidityError("lower witness: A_ell = (0, 2/(3 ell)) not inside (0, x)");
  }
  if (!(ell >= 4.0 * kE)) {
    throw ValidityError("lower witness: requires ell >= 4e");
  }
  const auto trunc = truncate_poisson(0.25 * ell, 1e-13);
  double kernel_mass = 0.0;  // P'_ell(x, A_ell); the atom at x lies outside A_ell
  for (std::size_t k = 0; k < trunc.pmf.size(); ++k) {
    kernel_mass +=
        trunc.pmf[k] * smc_kernel_ac_cdf(x, 0.5 * ell + 2.0 * k, a_right);
  }
  const double pi_mass = -std::expm1(-a_right);
  const double witness = pi_mass - kernel_mass;

  const double c_const = 1.0 / (2.0 * kE * kE);
  const double in_window = subordinator_in_window_probability(ell);
  const double rhs = a_right * c_const * in_window;

  VerificationReport report;
  report.claim_id = "smc_prime_tv_lower_witness";
  report.inputs = {{"x", x},
                   {"ell", ell},
                   {"pi_A", pi_mass},
                   {"kernel_A", kernel_mass},
                   {"p_window", in_window}};
  report.computed = witness;
  report.bound_or_target = rhs;
  report.tolerance = trunc.tail;
  report.passed = witness >= rhs - report.tolerance;
  return report;
}

double decay_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw std::domain_error("decay_slope: need at least 3 points");
  }
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const auto& [ell, tv] : points) {
    if (!(ell > 0.0 && tv > 0.0)) {
      throw std::domain_error("decay_slope: points must be positive");
    }
    lx.push_back(std::log(ell));
    ly.push_back(std::log(tv));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("decay_slope: degenerate abscissae");
  return sxy / sxx;
}

double chapman_kolmogorov_tv(Tmrca x, GeneticDistance ell1,
                             GeneticDistance ell2, const GridSpec& spec) {
  require_positive(x, "x");
  require_nonnegative(ell1, "ell1");
  require_nonnegative(ell2, "ell2");
  const Grid grid = make_grid(spec, x);
  const std::size_t n = grid.size();
  const double atom1 = smc_kernel_atom(x, ell1);

  std::vector<double> p1(n);
  for (std::size_t i = 0; i < n; ++i) {
    p1[i] = smc_kernel_density(x, ell1, grid.nodes[i]);
  }

  // composed a.c. density: stay-then-move, move-then-stay, move-then-move
  double tv = 0.5 * std::fabs(atom1 * smc_kernel_atom(x, ell2) -
                              smc_kernel_atom(x, ell1 + ell2));
  for (std::size_t j = 0; j < n; ++j) {
    const double y = grid.nodes[j];
    double smear = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      smear += grid.weights[i] * p1[i] *
               smc_kernel_density(grid.nodes[i], ell2, y);
    }
    const double composed = p1[j] * smc_kernel_atom(y, ell2) +
                            atom1 * smc_kernel_density(x, ell2, y) + smear;
    const double target = smc_kernel_density(x, ell1 + ell2, y);
    tv += 0.5 * grid.weights[j] * std::fabs(composed - target);
  }
  return tv;
}

double pi_stationarity_tv(GeneticDistance ell, const GridSpec& spec) {
  require_nonnegative(ell, "ell");
  // pushforward density: e^{-ell y} pi(y) + int pi(x) p_ell(x, y) dx
  const double t_max = spec.t_max;
  const auto pushed = [&](double y) {
    const double smeared = integrate_with_breaks(
        [&](double x) {
          return stationary_density(StationaryLawId::kPi, x) *
                 smc_kernel_density(x, ell, y);
        },
        1e-14, t_max, {y}, 1e-11);
    return smc_kernel_atom(y, ell) * stationary_density(StationaryLawId::kPi, y) +
           smeared;
  };
  const double diff = integrate_adaptive(
      [&](double y) {
        return std::fabs(pushed(y) - stationary_density(StationaryLawId::kPi, y));
      },
      1e-12, t_max, 1e-9);
  return 0.5 * diff;
}

}  // namespace smcmix
