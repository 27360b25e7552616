#include "blockspin/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blockspin {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

WilsonInterval wilson_interval(double successes, double trials, double z) {
  if (trials <= 0.0) throw std::invalid_argument("trials must be positive");
  const double p = successes / trials;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / trials;
  const double center = (p + z2 / (2.0 * trials)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom;
  return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

MeanSe mean_se(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("mean_se needs at least one value");
  MeanSe out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(n);
  if (n == 1) return out;
  double var = 0.0;
  for (double v : values) {
    const double d = v - out.mean;
    var += d * d;
  }
  var /= static_cast<double>(n - 1);
  out.se = std::sqrt(var / static_cast<double>(n));
  return out;
}

double kolmogorov_q(double x) {
  if (x <= 0.05) return 1.0;
  double q = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    q += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_test_normal(std::vector<double> samples, double sigma, double n_effective) {
  if (samples.empty()) throw std::invalid_argument("KS test needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i] / sigma);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  KsResult res;
  res.statistic = d;
  res.p_value = kolmogorov_q(std::sqrt(std::min(n_effective, n)) * d);
  return res;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit needs matched series of length >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LinearFit fit;
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  fit.slope = vxy / vxx;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

}  // namespace blockspin
