#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace smcmix {

// One-dimensional Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive, sum to 2
};

// Nodes/weights by Newton iteration on the Legendre recurrence; cached per n.
const GaussLegendreRule& gauss_legendre_rule(int n);

// Fixed-order quadrature of f on [a, b].
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int n = 16);

// Adaptive bisection on top of 16-point panels. abs_tol is an absolute
// budget for the whole interval.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-12);

// Adaptive integral split first at the given interior breakpoints (kink
// locations), so each piece is smooth.
double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks,
                             double abs_tol = 1e-12);

// Composite-quadrature grid specification for kernel discretizations.
struct GridSpec {
  double t_max = 40.0;       // stationary tail mass beyond 40 is < 1e-14
  int panels = 80;           // total panel count
  int points_per_panel = 16;
};

// A composite Gauss-Legendre grid on [0, t_max]. Panels are graded
// geometrically toward 0 (kernel densities vary on scale 1/ell there) and a
// panel boundary is placed at the kink location y = x of the transition
// densities.
struct Grid {
  std::vector<double> boundaries;  // panel edges, ascending, front 0, back t_max
  std::vector<double> nodes;       // all quadrature abscissae, ascending
  std::vector<double> weights;     // matching quadrature weights
  int points_per_panel = 16;

  std::size_t size() const { return nodes.size(); }
  std::size_t panel_count() const { return boundaries.size() - 1; }

  double integrate_values(const std::vector<double>& values) const;
};

// kink in (0, t_max) becomes a panel boundary; pass kink <= 0 for none.
Grid make_grid(const GridSpec& spec, double kink);

// Density values tabulated on a grid, integrable as sum(w * v).
struct GridDensity {
  Grid grid;
  std::vector<double> values;

  double mass() const { return grid.integrate_values(values); }
};

// Barycentric Lagrange weights for interpolation through the given nodes.
std::vector<double> barycentric_weights(const std::vector<double>& nodes);

// Evaluates the interpolant of (nodes, values) at x.
double barycentric_eval(const std::vector<double>& nodes,
                        const std::vector<double>& bary_weights,
                        const std::vector<double>& values, double x);

}  // namespace smcmix
