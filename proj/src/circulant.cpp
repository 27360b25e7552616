#include "blockspin/circulant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockspin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_spec(const CirculantSpec& spec) {
  if (spec.size < 1) throw std::invalid_argument("circulant size must be >= 1");
}

// kappa for the generic pair (d, o) standing in for (beta, alpha); requires
// d + 2o < 1 so that the minus branch lies in [0, 1)
double kappa_of(double d, double o) {
  if (d + 2.0 * o >= 1.0)
    throw std::domain_error("kappa requires beta + 2 alpha < 1");
  if (o == 0.0) return 0.0;
  const double disc = (1.0 - d) * (1.0 - d) - 4.0 * o * o;
  if (disc <= 0.0) throw std::domain_error("kappa discriminant must be positive");
  return ((1.0 - d) - std::sqrt(disc)) / (2.0 * o);
}

double inverse_entry_of(double d, double o, int s, int i, int j) {
  if (i < 0 || i >= s || j < 0 || j >= s)
    throw std::invalid_argument("index out of range");
  const double disc = (1.0 - d) * (1.0 - d) - 4.0 * o * o;
  if (d + 2.0 * o >= 1.0 || disc <= 0.0)
    throw std::domain_error("(I-A)^{-1} closed form requires beta + 2 alpha < 1");
  const double kappa = kappa_of(d, o);
  const int m = std::abs(i - j);
  return (std::pow(kappa, m) + std::pow(kappa, s - m)) /
         ((1.0 - std::pow(kappa, s)) * std::sqrt(disc));
}

}  // namespace

void CirculantSpec::apply(const double* x, double* y) const {
  const int s = size;
  for (int k = 0; k < s; ++k) {
    const double nb = x[(k + s - 1) % s] + x[(k + 1) % s];
    y[k] = diag * x[k] + off * nb;
  }
}

std::vector<double> CirculantSpec::apply(const std::vector<double>& x) const {
  check_spec(*this);
  if (static_cast<int>(x.size()) != size)
    throw std::invalid_argument("vector length does not match circulant size");
  std::vector<double> y(x.size());
  apply(x.data(), y.data());
  return y;
}

Eigen::MatrixXd dense(const CirculantSpec& spec) {
  check_spec(spec);
  const int s = spec.size;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s, s);
  std::vector<double> e(s, 0.0), col(s, 0.0);
  for (int k = 0; k < s; ++k) {
    e[k] = 1.0;
    spec.apply(e.data(), col.data());
    for (int i = 0; i < s; ++i) a(i, k) = col[i];
    e[k] = 0.0;
  }
  return a;
}

double eigenvalue(const CirculantSpec& spec, int j) {
  return spec.diag + 2.0 * spec.off * std::cos(kTwoPi * j / spec.size);
}

std::vector<double> eigenvalues(const CirculantSpec& spec) {
  check_spec(spec);
  std::vector<double> lam(spec.size);
  for (int j = 1; j <= spec.size; ++j) lam[j - 1] = eigenvalue(spec, j);
  return lam;
}

double spectral_norm(const CirculantSpec& spec) {
  return std::abs(spec.diag) + 2.0 * std::abs(spec.off);
}

double kappa1(const CirculantSpec& spec) { return kappa_of(spec.diag, spec.off); }

double inverse_I_minus_A_entry(const CirculantSpec& spec, int i, int j) {
  check_spec(spec);
  return inverse_entry_of(spec.diag, spec.off, spec.size, i, j);
}

double sigma_limit_entry(const CirculantSpec& spec, int i, int j) {
  check_spec(spec);
  const double disc =
      (1.0 - spec.diag) * (1.0 - spec.diag) - 4.0 * spec.off * spec.off;
  if (spec.total_temperature() >= 1.0 || disc <= 0.0)
    throw std::domain_error("Sigma limit requires beta + 2 alpha < 1");
  return std::pow(kappa1(spec), std::abs(i - j)) / std::sqrt(disc);
}

namespace {

// validates the Sigma* domain and returns the tilted spec A(1 - m*^2)
CirculantSpec star_spec(const CirculantSpec& spec, double m_star) {
  if (spec.total_temperature() <= 1.0)
    throw std::domain_error("Sigma* requires beta + 2 alpha > 1");
  if (!(m_star > 0.0 && m_star < 1.0))
    throw std::domain_error("Sigma* requires 0 < m* < 1");
  const CirculantSpec t = spec.scaled(1.0 - m_star * m_star);
  if (t.total_temperature() >= 1.0)
    throw std::domain_error("Sigma* requires (beta + 2 alpha)(1 - m*^2) < 1");
  return t;
}

}  // namespace

double kappa5(const CirculantSpec& spec, double m_star) {
  const CirculantSpec t = star_spec(spec, m_star);
  return kappa_of(t.diag, t.off);
}

double sigma_star_entry(const CirculantSpec& spec, double m_star, int i, int j) {
  const CirculantSpec t = star_spec(spec, m_star);
  const double disc = (1.0 - t.diag) * (1.0 - t.diag) - 4.0 * t.off * t.off;
  return (1.0 - m_star * m_star) *
         std::pow(kappa_of(t.diag, t.off), std::abs(i - j)) / std::sqrt(disc);
}

double sigma_star_entry_finite(const CirculantSpec& spec, double m_star, int i, int j) {
  const CirculantSpec t = star_spec(spec, m_star);
  return (1.0 - m_star * m_star) * inverse_entry_of(t.diag, t.off, t.size, i, j);
}

PoissonIdentity discrete_poisson_check(double r, int s, int m) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("r must be in (0,1)");
  if (s < 1 || m < 0 || m >= s) throw std::invalid_argument("need 0 <= m < s");
  // extended-precision accumulation: near r -> 1 the l = 0 term grows like
  // (1-r)^{-2} and plain double summation loses the last digits
  long double re = 0.0L, im = 0.0L;
  for (int l = 0; l < s; ++l) {
    const long double theta = (long double)kTwoPi * l / s;
    const long double denom = 1.0L - 2.0L * r * std::cos(theta) + (long double)r * r;
    re += std::cos(theta * m) / denom;
    im += std::sin(theta * m) / denom;
  }
  PoissonIdentity out;
  out.lhs = static_cast<double>(re / s);
  out.lhs_imag = static_cast<double>(im / s);
  out.rhs = static_cast<double>(
      (std::pow((long double)r, m) + std::pow((long double)r, s - m)) /
      ((1.0L - (long double)r * r) * (1.0L - std::pow((long double)r, s))));
  return out;
}

std::vector<double> hessian_at_zero_eigenvalues(const CirculantSpec& spec) {
  std::vector<double> lam = eigenvalues(spec);
  for (double& v : lam) v = v * (1.0 - v);
  return lam;
}

}  // namespace blockspin
