#pragma once

#include <Eigen/Dense>
#include <vector>

#include "blockspin/circulant.hpp"
#include "blockspin/model.hpp"

namespace blockspin {

// numerically stable log cosh: |y| + log1p(e^{-2|y|}) - log 2
double stable_log_cosh(double y);

// G(y) = log cosh(y) - y^2/2, with -y^4/12 <= G <= 0
double log_cosh_deviation(double y);

// phi_N(x) = (1/2) x^T A x - sum_k log cosh((Ax)_k)
double phi(const CirculantSpec& spec, const std::vector<double>& x);

// grad phi = A (x - tanh.(Ax))
std::vector<double> grad_phi(const CirculantSpec& spec, const std::vector<double>& x);

// Hess phi = A - A diag(sech^2((Ax)_k)) A
Eigen::MatrixXd hess_phi(const CirculantSpec& spec, const std::vector<double>& x);

struct FixedPointResult {
  std::vector<double> x;
  bool converged = false;
  int iterations = 0;
};

// iterates x <- h(x) = tanh.(Ax) until sup-norm change < tol; reports
// non-convergence instead of throwing
FixedPointResult fixed_point_iterate(const CirculantSpec& spec,
                                     std::vector<double> x0,
                                     int max_iter = 100000, double tol = 1e-12);

// largest solution of x = tanh(theta x) in [0, 1): 0 for theta <= 1, otherwise
// the unique positive root by bisection (monotone bracket, safe near theta = 1)
double solve_m_star(double theta);

// binary entropy s(m), continuous extension s(+-1) = 0
double spin_entropy(double m);

// F_theta(m) = (theta/2) m^2 - log 2 + s(m)
double rate_function_F(double theta, double m);

enum class Regime { high, critical, low };

struct LandscapeResult {
  Regime regime = Regime::high;
  double m_star = 0.0;
  double phi_at_min = 0.0;
  double temperature_gap = 0.0;  // beta + 2 alpha - 1, echoed for the critical test
  std::vector<MagnetizationVector> minimizers;
  double max_grad_residual = 0.0;   // sup-norm of grad phi at reported minimizers
  double min_hessian_eigenvalue = 0.0;
};

// classifies the regime by the sign of beta + 2 alpha - 1 (tolerance 1e-12) and
// returns the verified global minimizers: {0} in high/critical, {+-m*vec} in low
LandscapeResult classify_minimizers(const ModelParams& params);

// kappa1 / kappa5 / m* for the spec's regime (out-of-regime fields are NaN)
KappaConstants kappa_constants(const CirculantSpec& spec);

}  // namespace blockspin
