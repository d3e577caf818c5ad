#include "smcmix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "smcmix/errors.hpp"

namespace smcmix {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n(x) = 0.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::mutex rule_mutex;
std::map<int, GaussLegendreRule> rule_cache;

double gl_on_interval(const std::function<double(double)>& f, double a,
                      double b, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double whole, double tol, const GaussLegendreRule& rule,
                    int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl_on_interval(f, a, mid, rule);
  const double right = gl_on_interval(f, mid, b, rule);
  const double refined = left + right;
  if (std::fabs(refined - whole) <= tol || depth >= 48 || mid <= a ||
      mid >= b) {
    return refined;
  }
  return adaptive_rec(f, a, mid, left, 0.5 * tol, rule, depth + 1) +
         adaptive_rec(f, mid, b, right, 0.5 * tol, rule, depth + 1);
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre_rule: n out of range");
  std::lock_guard<std::mutex> lock(rule_mutex);
  auto it = rule_cache.find(n);
  if (it == rule_cache.end()) {
    it = rule_cache.emplace(n, compute_rule(n)).first;
  }
  return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int n) {
  return gl_on_interval(f, a, b, gauss_legendre_rule(n));
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol) {
  if (!(b > a)) return 0.0;
  const auto& rule = gauss_legendre_rule(16);
  const double whole = gl_on_interval(f, a, b, rule);
  return adaptive_rec(f, a, b, whole, std::max(abs_tol, 1e-16), rule, 0);
}

double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks,
                             double abs_tol) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::clamp(breaks[i], a, b);
    const double hi = std::clamp(breaks[i + 1], a, b);
    if (hi > lo) total += integrate_adaptive(f, lo, hi, abs_tol / breaks.size());
  }
  return total;
}

double Grid::integrate_values(const std::vector<double>& values) const {
  if (values.size() != nodes.size()) {
    throw GridError("Grid::integrate_values: size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * values[i];
  return sum;
}

namespace {

// Appends geometrically graded panel edges covering (a, b]. The finest panel
// sits at the `toward_left` end; contrast is the largest/smallest size ratio.
void grade_edges(double a, double b, int n, bool toward_left, double contrast,
                 std::vector<double>* edges) {
  const double rho = n > 1 ? std::pow(contrast, 1.0 / (n - 1)) : 1.0;
  // sizes s, s*rho, ..., s*rho^{n-1} summing to b - a
  double total = 0.0, p = 1.0;
  for (int i = 0; i < n; ++i) {
    total += p;
    p *= rho;
  }
  const double s0 = (b - a) / total;
  double pos = a, size = s0;
  if (toward_left) {
    for (int i = 0; i < n; ++i) {
      pos += size;
      edges->push_back(i + 1 == n ? b : pos);
      size *= rho;
    }
  } else {
    // mirror: largest panel first
    std::vector<double> gaps(n);
    double sz = s0;
    for (int i = 0; i < n; ++i) {
      gaps[n - 1 - i] = sz;
      sz *= rho;
    }
    for (int i = 0; i < n; ++i) {
      pos += gaps[i];
      edges->push_back(i + 1 == n ? b : pos);
    }
  }
}

}  // namespace

Grid make_grid(const GridSpec& spec, double kink) {
  if (!(spec.t_max > 0.0) || spec.panels < 2 || spec.points_per_panel < 2) {
    throw GridError("make_grid: invalid GridSpec");
  }
  Grid grid;
  grid.points_per_panel = spec.points_per_panel;
  grid.boundaries.push_back(0.0);

  const bool interior_kink = kink > 0.0 && kink < spec.t_max;
  if (interior_kink) {
    // Split the panel budget across [0, kink] and [kink, t_max]; both sides
    // keep enough panels to resolve their end of the domain.
    int n_left = std::clamp(spec.panels / 2, 4, spec.panels - 4);
    const int n_right = spec.panels - n_left;
    grade_edges(0.0, kink, n_left, /*toward_left=*/true, 1e6,
                &grid.boundaries);
    grade_edges(kink, spec.t_max, n_right, /*toward_left=*/true, 1e2,
                &grid.boundaries);
  } else {
    grade_edges(0.0, spec.t_max, spec.panels, /*toward_left=*/true, 1e6,
                &grid.boundaries);
  }

  const auto& rule = gauss_legendre_rule(spec.points_per_panel);
  grid.nodes.reserve(grid.panel_count() * spec.points_per_panel);
  grid.weights.reserve(grid.nodes.capacity());
  for (std::size_t p = 0; p + 1 < grid.boundaries.size(); ++p) {
    const double a = grid.boundaries[p];
    const double b = grid.boundaries[p + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < spec.points_per_panel; ++i) {
      grid.nodes.push_back(mid + half * rule.nodes[i]);
      grid.weights.push_back(half * rule.weights[i]);
    }
  }
  return grid;
}

std::vector<double> barycentric_weights(const std::vector<double>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  // Scale differences by the interval half-width to avoid under/overflow.
  const double scale = 2.0 / std::max(nodes.back() - nodes.front(), 1e-300);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) w[i] /= (nodes[i] - nodes[j]) * scale;
    }
  }
  return w;
}

double barycentric_eval(const std::vector<double>& nodes,
                        const std::vector<double>& bary_weights,
                        const std::vector<double>& values, double x) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double dx = x - nodes[i];
    if (dx == 0.0) return values[i];
    const double t = bary_weights[i] / dx;
    num += t * values[i];
    den += t;
  }
  return num / den;
}

}  // namespace smcmix
