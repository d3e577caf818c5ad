#include "smcmix/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "smcmix/dists.hpp"
#include "smcmix/errors.hpp"
#include "smcmix/math.hpp"

namespace smcmix {

double smc_kernel_atom(Tmrca x, GeneticDistance ell) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  return std::exp(-ell * x);
}

double smc_kernel_density(Tmrca x, GeneticDistance ell, double y) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  require_positive(y, "y");
  const double m = std::min(x, y);
  // ell/(ell-1) e^{-y} (1 - e^{-(ell-1)m})  ==  ell e^{-y} m g((ell-1)m)
  // with g(u) = (1-e^{-u})/u; covers ell = 1 (g(0) = 1) without branching.
  return ell * std::exp(-y) * m * em1_over((ell - 1.0) * m);
}

double smc_kernel_ac_cdf(Tmrca x, GeneticDistance ell, double y) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  require_positive(y, "y");
  const double m = std::min(x, y);
  double head;  // integral of p_ell(x,.) over (0, m]
  if (std::fabs(ell - 1.0) < 1e-6) {
    // (N(ell) - N(1))/(ell - 1) with N(l) = l(1-e^{-y}) - (1-e^{-ly});
    // first-order Taylor around ell = 1 keeps full precision.
    head = (1.0 - (1.0 + m) * std::exp(-m)) +
           0.5 * m * m * std::exp(-m) * (ell - 1.0);
  } else {
    head = (ell * (-std::expm1(-m)) - (-std::expm1(-ell * m))) / (ell - 1.0);
  }
  if (y <= x) return head;
  // tail piece: density is ell x g((ell-1)x) e^{-u} for u > x
  const double c = ell * x * em1_over((ell - 1.0) * x);
  return head + c * (std::exp(-x) - std::exp(-y));
}

MixedMeasure smc_kernel(Tmrca x, GeneticDistance ell, const GridSpec& spec) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  MixedMeasure k;
  k.atom_location = x;
  k.atom_mass = smc_kernel_atom(x, ell);
  k.density.grid = make_grid(spec, x);
  k.density.values.resize(k.density.grid.size());
  k.density_fn = [x, ell](double y) { return smc_kernel_density(x, ell, y); };
  for (std::size_t i = 0; i < k.density.values.size(); ++i) {
    k.density.values[i] = k.density_fn(k.density.grid.nodes[i]);
  }
  const double mass = k.total_mass();
  if (ell > 0.0 && std::fabs(mass - 1.0) > 1e-8) {
    throw GridError("smc_kernel: mixed-measure mass off by more than 1e-8");
  }
  return k;
}

double smc_laplace(Tmrca x, GeneticDistance ell, double lambda) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  require_positive(lambda, "lambda");
  const double frac = lambda * (1.0 + lambda + ell) /
                      ((1.0 + lambda) * (lambda + ell));
  return 1.0 - frac * (-std::expm1(-(lambda + ell) * x));
}

double transport_pde_residual(Tmrca x, GeneticDistance ell, double lambda,
                              double h) {
  require_positive(x, "x");
  require_positive(ell, "ell");
  require_positive(lambda, "lambda");
  if (!(h > 0.0 && h < lambda && h < ell)) {
    throw std::domain_error("h must satisfy 0 < h < min(ell, lambda)");
  }
  const double d_ell =
      (smc_laplace(x, ell + h, lambda) - smc_laplace(x, ell - h, lambda)) /
      (2.0 * h);
  const double d_lambda =
      (smc_laplace(x, ell, lambda + h) - smc_laplace(x, ell, lambda - h)) /
      (2.0 * h);
  const double phi = smc_laplace(x, ell, lambda);
  return d_ell - d_lambda - (1.0 - phi) / (lambda * (1.0 + lambda));
}

PoissonTruncation truncate_poisson(double lambda, double tail_tol,
                                   int max_terms) {
  require_nonnegative(lambda, "lambda");
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::domain_error("tail_tol must be in (0,1)");
  }
  PoissonTruncation trunc;
  if (lambda == 0.0) {
    trunc.pmf = {1.0};
    trunc.tail = 0.0;
    return trunc;
  }
  const double log_lambda = std::log(lambda);
  double cum = 0.0;
  for (int k = 0; k <= max_terms; ++k) {
    const double p = std::exp(-lambda + k * log_lambda - std::lgamma(k + 1.0));
    trunc.pmf.push_back(p);
    cum += p;
    // Past the mode, stop once the requested tail is reached or the partial
    // sum has saturated double precision (terms no longer register).
    if (k >= lambda && (1.0 - cum < tail_tol || p < 1e-18 * cum)) {
      trunc.tail = std::max(0.0, 1.0 - cum);
      return trunc;
    }
  }
  throw ValidityError("truncate_poisson: term cap exceeded before tail_tol");
}

double smc_prime_kernel_atom(Tmrca x, GeneticDistance ell) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  return std::exp(-0.5 * ell * x + 0.25 * ell * std::expm1(-2.0 * x));
}

MixedMeasure smc_prime_kernel(Tmrca x, GeneticDistance ell,
                              const GridSpec& spec, double tail_tol) {
  require_positive(x, "x");
  require_nonnegative(ell, "ell");
  auto trunc = std::make_shared<PoissonTruncation>(
      truncate_poisson(0.25 * ell, tail_tol));
  MixedMeasure k;
  k.atom_location = x;
  k.atom_mass = smc_prime_kernel_atom(x, ell);
  k.truncation_terms = static_cast<int>(trunc->pmf.size());
  k.truncation_tail = trunc->tail;
  k.density_fn = [x, ell, trunc](double y) {
    double p = 0.0;
    for (std::size_t j = 0; j < trunc->pmf.size(); ++j) {
      p += trunc->pmf[j] * smc_kernel_density(x, 0.5 * ell + 2.0 * j, y);
    }
    return p;
  };
  k.density.grid = make_grid(spec, x);
  k.density.values.resize(k.density.grid.size());
  for (std::size_t i = 0; i < k.density.values.size(); ++i) {
    k.density.values[i] = k.density_fn(k.density.grid.nodes[i]);
  }
  const double mass = k.total_mass();
  if (ell > 0.0 && std::fabs(mass - 1.0) > 1e-8 + tail_tol) {
    throw GridError("smc_prime_kernel: mixed-measure mass outside budget");
  }
  return k;
}

JumpKernelOperator::JumpKernelOperator(ChainId chain, const GridSpec& spec,
                                       double kink)
    : chain_(chain), grid_(make_grid(spec, kink)) {
  const std::size_t n = grid_.size();
  const int m = grid_.points_per_panel;
  op_.assign(n * n, 0.0);

  const auto& rule = gauss_legendre_rule(m);
  const auto ref_bary = barycentric_weights(rule.nodes);

  const auto q = [this](double t, double s) {
    return jump_density(chain_, s, t);
  };

  // Plain Nystrom entries first.
  for (std::size_t j = 0; j < n; ++j) {
    const double t = grid_.nodes[j];
    double* row = &op_[j * n];
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = grid_.weights[i] * q(t, grid_.nodes[i]);
    }
  }

  // Correct the source panel containing each output node: the integrand has
  // a kink at s = t, so integrate the two half-panels with fresh nodes and
  // route the values through the panel's Lagrange basis.
  std::vector<double> basis(m);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = grid_.nodes[j];
    const auto panel = static_cast<std::size_t>(
        std::upper_bound(grid_.boundaries.begin(), grid_.boundaries.end(), t) -
        grid_.boundaries.begin() - 1);
    const double a = grid_.boundaries[panel];
    const double b = grid_.boundaries[std::min(panel + 1, grid_.panel_count())];
    if (!(t > a && t < b)) continue;
    double* row = &op_[j * n];
    const std::size_t i0 = panel * m;
    for (int i = 0; i < m; ++i) row[i0 + i] = 0.0;
    const double inv_half = 2.0 / (b - a);
    for (int side = 0; side < 2; ++side) {
      const double lo = side == 0 ? a : t;
      const double hi = side == 0 ? t : b;
      const double mid = 0.5 * (lo + hi);
      const double half = 0.5 * (hi - lo);
      for (int g = 0; g < m; ++g) {
        const double s = mid + half * rule.nodes[g];
        const double w = half * rule.weights[g];
        const double qval = q(t, s);
        // Lagrange basis on the panel's own nodes, in reference coordinates.
        const double sref = (s - 0.5 * (a + b)) * inv_half;
        double den = 0.0;
        bool hit = false;
        for (int i = 0; i < m; ++i) {
          const double dx = sref - rule.nodes[i];
          if (dx == 0.0) {
            std::fill(basis.begin(), basis.end(), 0.0);
            basis[i] = 1.0;
            hit = true;
            break;
          }
          basis[i] = ref_bary[i] / dx;
          den += basis[i];
        }
        if (!hit) {
          for (int i = 0; i < m; ++i) basis[i] /= den;
        }
        for (int i = 0; i < m; ++i) row[i0 + i] += w * qval * basis[i];
      }
    }
  }

  // Per-source mass: column i of the operator carries weight w_i times the
  // kernel row q(.|s_i), whose quadrature mass should be exactly w_i.
  // Rescale drifting columns and count them (silent renormalization would
  // mask grid-resolution bugs).
  for (std::size_t i = 0; i < n; ++i) {
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) mass += grid_.weights[j] * op_[j * n + i];
    const double drift = mass / grid_.weights[i] - 1.0;
    if (std::fabs(drift) > 1e-9) {
      ++renormalized_columns_;
      const double scale = grid_.weights[i] / mass;
      for (std::size_t j = 0; j < n; ++j) op_[j * n + i] *= scale;
    }
  }
}

GridDensity JumpKernelOperator::apply(const GridDensity& f) const {
  const std::size_t n = grid_.size();
  if (f.values.size() != n) throw GridError("JumpKernelOperator: grid mismatch");
  GridDensity out;
  out.grid = grid_;
  out.values.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double* row = &op_[j * n];
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += row[i] * f.values[i];
    out.values[j] = sum;
  }
  return out;
}

GridDensity JumpKernelOperator::n_step_from(Tmrca x, int n) const {
  require_positive(x, "x");
  if (n < 1) throw std::domain_error("n must be >= 1");
  GridDensity f;
  f.grid = grid_;
  f.values.resize(grid_.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    f.values[i] = jump_density(chain_, x, grid_.nodes[i]);
  }
  for (int step = 1; step < n; ++step) f = apply(f);
  const double mass = f.mass();
  if (std::fabs(mass - 1.0) > n * 1e-9) {
    throw GridError("jump kernel power: mass drifted beyond n*1e-9");
  }
  return f;
}

GridDensity jump_kernel_power(ChainId chain, Tmrca x, int n,
                              const GridSpec& grid) {
  JumpKernelOperator op(chain, grid, x);
  return op.n_step_from(x, n);
}

}  // namespace smcmix
