#pragma once

#include <Eigen/Dense>
#include <vector>

#include "blockspin/model.hpp"

namespace blockspin {

// The symmetric banded circulant interaction matrix with first row
// (beta, alpha, 0, ..., 0, alpha) for size >= 3. For size 2 the corner and the
// band coincide, giving the (beta, 2alpha) convention; for size 1 the matrix is
// [beta + 2alpha] (Curie-Weiss). All operations below use the wrapped-index
// convention consistently, so the size 1 and 2 cases need no special casing.
struct CirculantSpec {
  int size = 0;       // s_N
  double diag = 0.0;  // beta
  double off = 0.0;   // alpha

  static CirculantSpec from_params(const ModelParams& p) {
    return {p.n_blocks, p.beta, p.alpha};
  }
  // A with (beta, alpha) replaced by (c*beta, c*alpha); used for I - A(1-m*^2)
  CirculantSpec scaled(double c) const { return {size, c * diag, c * off}; }

  double total_temperature() const { return diag + 2.0 * off; }

  // y = A x via the first row, O(s)
  void apply(const double* x, double* y) const;
  std::vector<double> apply(const std::vector<double>& x) const;
};

// dense A, assembled column by column from apply() so every consumer sees the
// same matrix including the small-size conventions
Eigen::MatrixXd dense(const CirculantSpec& spec);

// lambda_j = beta + 2 alpha cos(2 pi j / s), j = 1..s (returned in j order)
std::vector<double> eigenvalues(const CirculantSpec& spec);
double eigenvalue(const CirculantSpec& spec, int j);

// ||A||_2 = beta + 2 alpha for beta, alpha >= 0
double spectral_norm(const CirculantSpec& spec);

// kappa_1 = ((1-beta) - sqrt((1-beta)^2 - 4 alpha^2)) / (2 alpha), the minus
// branch of the quadratic, so 0 < kappa_1 < 1 when beta + 2 alpha < 1.
// Returns 0 for alpha = 0. Throws outside the high-temperature cone.
double kappa1(const CirculantSpec& spec);

// the decay rates and the scalar fixed point bundled per regime; fields that
// do not exist in the current regime are NaN (kappa1 in low temperature,
// kappa5 in high temperature where m* = 0). Factory: kappa_constants() in
// landscape.hpp.
struct KappaConstants {
  double kappa1 = 0.0;
  double kappa5 = 0.0;
  double m_star = 0.0;
};

// closed-form entry of (I - A)^{-1}:
//   (kappa^|i-j| + kappa^{s-|i-j|}) / ((1 - kappa^s) sqrt((1-beta)^2 - 4 alpha^2))
// 0-based indices. Requires beta + 2 alpha < 1.
double inverse_I_minus_A_entry(const CirculantSpec& spec, int i, int j);

// s -> infinity limit of the above: kappa^|i-j| / sqrt((1-beta)^2 - 4 alpha^2)
double sigma_limit_entry(const CirculantSpec& spec, int i, int j);

// Sigma* entries for the low-temperature conditional CLT,
// beta + 2 alpha > 1 and m_star = m*(beta + 2 alpha):
//   (1 - m*^2) [(I - A(1 - m*^2))^{-1}]_{ij}
// sigma_star_entry is the s -> infinity limit with rate kappa5;
// sigma_star_entry_finite keeps the finite-s corner terms.
double kappa5(const CirculantSpec& spec, double m_star);
double sigma_star_entry(const CirculantSpec& spec, double m_star, int i, int j);
double sigma_star_entry_finite(const CirculantSpec& spec, double m_star, int i, int j);

// Both sides of the discrete Poisson identity
//   (1/s) sum_l e^{2 pi i l m / s} / (1 - 2 r cos(2 pi l / s) + r^2)
//     = (1/(1-r^2)) (r^m + r^{s-m}) / (1 - r^s)
// for 0 < r < 1, 0 <= m < s. lhs_imag is the (analytically zero) imaginary part.
struct PoissonIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_imag = 0.0;
};
PoissonIdentity discrete_poisson_check(double r, int s, int m);

// eigenvalues of A - A^2 (the Hessian of phi_N at zero), via lambda (1 - lambda)
std::vector<double> hessian_at_zero_eigenvalues(const CirculantSpec& spec);

}  // namespace blockspin
