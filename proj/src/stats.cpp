#include "smcmix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smcmix {

MeanSe sample_mean_se(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("sample_mean_se: empty sample");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = xs.size() > 1 ? ss / (xs.size() - 1) : 0.0;
  return {mean, std::sqrt(var / xs.size())};
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::fabs(f - i / n));
    d = std::max(d, std::fabs((i + 1) / n - f));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

double ks_critical_value(double alpha, double n_eff) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(n_eff);
}

double chi_square_statistic(const std::vector<double>& observed,
                            const std::vector<double>& expected) {
  if (observed.size() != expected.size()) {
    throw std::invalid_argument("chi_square_statistic: size mismatch");
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("fit_slope: need >= 2 paired points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  return sxy / sxx;
}

MeanSe ratio_of_means(const std::vector<double>& a,
                      const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("ratio_of_means: need paired samples");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  const double r = mb / ma;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  const double denom = n > 1 ? n - 1 : 1;
  saa /= denom;
  sbb /= denom;
  sab /= denom;
  const double var = (sbb - 2.0 * r * sab + r * r * saa) / (n * ma * ma);
  return {r, std::sqrt(std::max(0.0, var))};
}

double empirical_tv(const std::vector<double>& sample,
                    const std::function<double(double)>& quantile, int bins) {
  if (bins < 2) throw std::invalid_argument("empirical_tv: bins < 2");
  if (sample.empty()) throw std::invalid_argument("empirical_tv: empty sample");
  std::vector<double> edges(bins - 1);
  for (int b = 1; b < bins; ++b) {
    edges[b - 1] = quantile(static_cast<double>(b) / bins);
  }
  std::vector<double> counts(bins, 0.0);
  for (double x : sample) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    counts[static_cast<std::size_t>(it - edges.begin())] += 1.0;
  }
  const double target = static_cast<double>(sample.size()) / bins;
  double tv = 0.0;
  for (double c : counts) tv += std::fabs(c - target);
  return 0.5 * tv / sample.size();
}

}  // namespace smcmix
