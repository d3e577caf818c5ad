#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace smcmix {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe sample_mean_se(const std::vector<double>& xs);

// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

// Two-sample KS statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic KS critical value at level alpha for effective sample size
// n_eff (use n for one sample, n*m/(n+m) for two).
double ks_critical_value(double alpha, double n_eff);

// Pearson chi-square statistic for observed counts vs expected counts.
double chi_square_statistic(const std::vector<double>& observed,
                            const std::vector<double>& expected);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Ratio of means b/a with a delta-method standard error (paired samples).
MeanSe ratio_of_means(const std::vector<double>& a,
                      const std::vector<double>& b);

// Total variation between an empirical sample and a reference law, using
// bins of equal reference mass defined by the given quantile function.
double empirical_tv(const std::vector<double>& sample,
                    const std::function<double(double)>& quantile, int bins);

}  // namespace smcmix
