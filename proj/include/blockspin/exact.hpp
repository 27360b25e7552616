#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "blockspin/model.hpp"

namespace blockspin {

// Exact law of the block magnetization on the lattice A_N^{s}. States are the
// count vectors (n_1..n_s), n_k in [0, B], ranked in mixed-radix order with
// n_1 the most significant digit. log_probs are normalized (log-sum-exp = 0).
struct ExactLaw {
  ModelParams params;
  std::vector<double> log_probs;
  double log_Z = 0.0;

  std::int64_t n_states() const { return static_cast<std::int64_t>(log_probs.size()); }
  BlockCounts counts_at(std::int64_t rank) const;
  MagnetizationVector magnetization_at(std::int64_t rank) const;
  std::int64_t rank_of(const BlockCounts& counts) const;
  double prob(std::int64_t rank) const;
};

// Enumerates all (B+1)^s magnetization states. Throws if the state count
// exceeds the budget (use the sampler instead at that point).
ExactLaw exact_law(const ModelParams& params, std::int64_t budget = 100000000);

// Streaming log partition function over the magnetization lattice; never
// materializes the law, parallelizes over the leading coordinate, and merges
// partial log-sum-exp results in coordinate order (deterministic for any
// thread count).
double exact_log_Z(const ModelParams& params, int threads = 1,
                   std::int64_t budget = 100000000);

// Independent ground truth: brute force over all 2^N spin configurations,
// binned by block magnetization. N <= 26 guard. Shares no code path with
// exact_law beyond the parameter struct.
ExactLaw spin_level_law(const ModelParams& params);

// exact mean and covariance of the first d coordinates of m under the law
std::pair<Eigen::VectorXd, Eigen::MatrixXd> exact_moments(const ExactLaw& law, int d);

// restriction to the Euclidean ball ||m - center||_2 <= radius, renormalized;
// throws if the restriction is empty
ExactLaw conditional_law(const ExactLaw& law, const MagnetizationVector& center,
                         double radius);

// total variation distance between two laws over the same state space
double total_variation(const ExactLaw& a, const ExactLaw& b);

// CSV dump (m_1..m_s, log_prob)
void dump_csv(const ExactLaw& law, std::ostream& os);

// Both sides of the Hubbard-Stratonovich identity at a point x: the density of
// sqrt(N/s) m + Z with Z ~ Normal(0, A^{-1}) as an exact discrete mixture of
// Gaussians (lhs), and z_N exp{-(N/s) phi(sqrt(s/N) x)} with z_N from tensor
// quadrature (rhs). Quadrature is restricted to s <= 2.
struct HsDensity {
  double lhs = 0.0;
  double rhs = 0.0;
};
HsDensity hs_density_check(const ModelParams& params, const std::vector<double>& x);

// normalization-free pieces for larger s: log lhs mixture density, and the
// exponent -(N/s) phi(sqrt(s/N) x) of the unnormalized rhs; ratios between two
// points compare without any quadrature
double hs_log_density_mixture(const ModelParams& params, const ExactLaw& law,
                              const std::vector<double>& x);
double hs_log_density_exponent(const ModelParams& params, const std::vector<double>& x);

}  // namespace blockspin
