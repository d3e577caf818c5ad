#pragma once

#include <functional>
#include <vector>

#include "smcmix/quadrature.hpp"
#include "smcmix/types.hpp"

namespace smcmix {

// P_ell(x, .) and P'_ell(x, .) have one atom plus an absolutely continuous
// part; the two are kept separate end to end because TV computations need
// the atom exactly. density_fn evaluates the a.c. density anywhere and
// density tabulates it on the construction grid (atom never smeared on).
struct MixedMeasure {
  Tmrca atom_location = 0.0;
  double atom_mass = 0.0;
  GridDensity density;
  std::function<double(double)> density_fn;

  // Poisson-mixture bookkeeping (SMC' kernels only).
  int truncation_terms = 0;
  double truncation_tail = 0.0;

  double total_mass() const { return atom_mass + density.mass(); }
};

// Atom weight e^{-ell x} of the SMC transition kernel.
double smc_kernel_atom(Tmrca x, GeneticDistance ell);

// A.c. density p_ell(x, y); the ell = 1 branch e^{-y} min(x,y) and the
// near-1 regime are both covered by one expm1-based evaluation.
double smc_kernel_density(Tmrca x, GeneticDistance ell, double y);

// Integral of p_ell(x, .) over (0, y], in closed form.
double smc_kernel_ac_cdf(Tmrca x, GeneticDistance ell, double y);

// Full SMC transition kernel at genetic distance ell, tabulated on the grid
// (the grid gets a panel boundary at the density kink y = x).
MixedMeasure smc_kernel(Tmrca x, GeneticDistance ell, const GridSpec& grid);

// Laplace transform E_x[e^{-lambda Y_ell}] of the SMC process.
double smc_laplace(Tmrca x, GeneticDistance ell, double lambda);

// Residual of the transport equation satisfied by smc_laplace, evaluated
// with central differences of step h: d_ell phi - d_lambda phi
// - (1 - phi)/(lambda (1 + lambda)). O(h^2) for the exact transform.
double transport_pde_residual(Tmrca x, GeneticDistance ell, double lambda,
                              double h);

// Poisson(lambda) probabilities 0..K with K chosen so the dropped upper
// tail is below tail_tol. Throws if K would exceed max_terms.
struct PoissonTruncation {
  std::vector<double> pmf;
  double tail = 0.0;
};
PoissonTruncation truncate_poisson(double lambda, double tail_tol,
                                   int max_terms = 1000000);

// Atom weight of the SMC' kernel: e^{-ell x/2} exp((ell/4)(e^{-2x} - 1)),
// which equals e^{-ell x p_vis(x)}.
double smc_prime_kernel_atom(Tmrca x, GeneticDistance ell);

// SMC' transition kernel as the Poisson mixture over SMC kernels at
// distances ell/2 + 2k, truncated to tail mass below tail_tol.
MixedMeasure smc_prime_kernel(Tmrca x, GeneticDistance ell,
                              const GridSpec& grid, double tail_tol = 1e-10);

// Nystrom discretization of a jump-chain kernel on a composite grid with a
// panel boundary at `kink`. The moving kink of q(t|s) at s = t is handled by
// splitting the source panel containing each output node and interpolating
// the propagated density through the panel's own quadrature nodes, so a
// single matrix propagates densities at close to quadrature accuracy.
class JumpKernelOperator {
 public:
  JumpKernelOperator(ChainId chain, const GridSpec& spec, double kink);

  const Grid& grid() const { return grid_; }
  ChainId chain() const { return chain_; }

  // Columns whose quadrature mass drifted more than 1e-9 from 1 and were
  // rescaled; a large count signals an under-resolved grid.
  int renormalized_columns() const { return renormalized_columns_; }

  // Density of K^n(x, .): the first step is the closed form at the nodes,
  // each further step one operator application.
  GridDensity n_step_from(Tmrca x, int n) const;

  GridDensity apply(const GridDensity& f) const;

 private:
  ChainId chain_;
  Grid grid_;
  std::vector<double> op_;  // row-major, op_[j * N + i]
  int renormalized_columns_ = 0;
};

// Convenience wrapper: density of K^n(x, .) for the requested chain.
GridDensity jump_kernel_power(ChainId chain, Tmrca x, int n,
                              const GridSpec& grid);

}  // namespace smcmix
