#pragma once

#include <utility>
#include <vector>

namespace blockspin {

double normal_cdf(double x);

// Wilson score interval for a binomial proportion at confidence 95%
struct WilsonInterval {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};
WilsonInterval wilson_interval(double successes, double trials, double z = 1.959964);

// mean and standard error of the mean across replicate values
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& values);

// survival function of the Kolmogorov distribution, Q(x) = 2 sum (-1)^{k-1} e^{-2k^2x^2}
double kolmogorov_q(double x);

// one-sample KS test of `samples` against Normal(0, sigma^2); n_effective
// discounts autocorrelation when scaling the statistic
struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};
KsResult ks_test_normal(std::vector<double> samples, double sigma, double n_effective);

// R^2 of the least-squares line y = a + b x
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace blockspin
