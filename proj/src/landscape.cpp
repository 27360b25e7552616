#include "blockspin/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blockspin {

double stable_log_cosh(double y) {
  const double a = std::abs(y);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double log_cosh_deviation(double y) { return stable_log_cosh(y) - 0.5 * y * y; }

namespace {

void check_dim(const CirculantSpec& spec, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != spec.size)
    throw std::invalid_argument("vector length does not match circulant size");
}

}  // namespace

double phi(const CirculantSpec& spec, const std::vector<double>& x) {
  check_dim(spec, x);
  const std::vector<double> ax = spec.apply(x);
  double quad = 0.0, lc = 0.0;
  for (int k = 0; k < spec.size; ++k) {
    quad += x[k] * ax[k];
    lc += stable_log_cosh(ax[k]);
  }
  return 0.5 * quad - lc;
}

std::vector<double> grad_phi(const CirculantSpec& spec, const std::vector<double>& x) {
  check_dim(spec, x);
  std::vector<double> ax = spec.apply(x);
  for (int k = 0; k < spec.size; ++k) ax[k] = x[k] - std::tanh(ax[k]);
  return spec.apply(ax);
}

Eigen::MatrixXd hess_phi(const CirculantSpec& spec, const std::vector<double>& x) {
  check_dim(spec, x);
  const std::vector<double> ax = spec.apply(x);
  const Eigen::MatrixXd a = dense(spec);
  Eigen::VectorXd sech2(spec.size);
  for (int k = 0; k < spec.size; ++k) {
    const double t = std::tanh(ax[k]);
    sech2[k] = 1.0 - t * t;
  }
  return a - a * sech2.asDiagonal() * a;
}

FixedPointResult fixed_point_iterate(const CirculantSpec& spec, std::vector<double> x0,
                                     int max_iter, double tol) {
  check_dim(spec, x0);
  FixedPointResult res;
  std::vector<double> next(x0.size());
  for (int it = 1; it <= max_iter; ++it) {
    spec.apply(x0.data(), next.data());
    double delta = 0.0;
    for (std::size_t k = 0; k < x0.size(); ++k) {
      next[k] = std::tanh(next[k]);
      delta = std::max(delta, std::abs(next[k] - x0[k]));
    }
    x0.swap(next);
    if (delta < tol) {
      res.converged = true;
      res.iterations = it;
      break;
    }
    res.iterations = it;
  }
  res.x = std::move(x0);
  return res;
}

double solve_m_star(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (theta <= 1.0) return 0.0;
  double lo = 0.0, hi = 1.0;  // tanh(theta x) - x is > 0 at 0+ and < 0 at 1
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tanh(theta * mid) - mid > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double spin_entropy(double m) {
  if (std::abs(m) > 1.0) throw std::invalid_argument("|m| must be <= 1");
  const double p = 0.5 * (1.0 + m);
  const double q = 0.5 * (1.0 - m);
  const double hp = p > 0.0 ? -p * std::log(p) : 0.0;
  const double hq = q > 0.0 ? -q * std::log(q) : 0.0;
  return hp + hq;
}

double rate_function_F(double theta, double m) {
  return 0.5 * theta * m * m - std::log(2.0) + spin_entropy(m);
}

KappaConstants kappa_constants(const CirculantSpec& spec) {
  KappaConstants out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double theta = spec.total_temperature();
  if (theta < 1.0) {
    out.kappa1 = kappa1(spec);
    out.kappa5 = nan;
    out.m_star = 0.0;
  } else if (theta > 1.0) {
    out.m_star = solve_m_star(theta);
    out.kappa1 = nan;
    out.kappa5 = kappa5(spec, out.m_star);
  } else {
    out.kappa1 = nan;
    out.kappa5 = nan;
    out.m_star = 0.0;
  }
  return out;
}

LandscapeResult classify_minimizers(const ModelParams& params) {
  params.validate();
  const CirculantSpec spec = CirculantSpec::from_params(params);
  const double theta = spec.total_temperature();

  LandscapeResult res;
  res.temperature_gap = theta - 1.0;
  if (res.temperature_gap < -1e-12)
    res.regime = Regime::high;
  else if (res.temperature_gap > 1e-12)
    res.regime = Regime::low;
  else
    res.regime = Regime::critical;

  const int s = spec.size;
  if (res.regime == Regime::low) {
    res.m_star = solve_m_star(theta);
    res.minimizers.push_back(MagnetizationVector(s, res.m_star));
    res.minimizers.push_back(MagnetizationVector(s, -res.m_star));
  } else {
    res.m_star = 0.0;
    res.minimizers.push_back(MagnetizationVector(s, 0.0));
  }
  res.phi_at_min = phi(spec, res.minimizers.front());

  // verify: gradient residual and Hessian spectrum at each reported minimizer.
  // The Hessian at m*vec is A - A^2 (1 - m*^2), circulant, so its eigenvalues
  // come from the cosine formula.
  res.min_hessian_eigenvalue = std::numeric_limits<double>::infinity();
  const double c = 1.0 - res.m_star * res.m_star;
  for (int j = 1; j <= s; ++j) {
    const double lam = eigenvalue(spec, j);
    res.min_hessian_eigenvalue =
        std::min(res.min_hessian_eigenvalue, lam - lam * lam * c);
  }
  for (const auto& x : res.minimizers) {
    const std::vector<double> g = grad_phi(spec, x);
    for (double v : g) res.max_grad_residual = std::max(res.max_grad_residual, std::abs(v));
  }
  return res;
}

}  // namespace blockspin
