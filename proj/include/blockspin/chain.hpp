#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <vector>

#include "blockspin/model.hpp"

namespace blockspin {

// The block-magnetization chain at fixed block size: a 1D nearest-neighbor
// model over the alphabet A_c = {-1 + 2l/B : l = 0..B} with binomial a-priori
// weights and periodic boundary.
struct ChainSpec {
  int block_size = 0;  // 1/c spins per block
  double beta = 0.0;
  double alpha = 0.0;
  int n_blocks = 0;  // s, the (periodic) chain length

  static ChainSpec from_params(const ModelParams& p) {
    return {p.block_size(), p.beta, p.alpha, p.n_blocks};
  }
  ModelParams to_params() const {
    return {beta, alpha, block_size * n_blocks, n_blocks, ParamMode::relaxed};
  }
};

// log of the standard a-priori weight binom(B, l) / 2^B of the value with l
// plus-spins. This is the weight forced by the spin-level model; the appendix
// additionally prints binom(B + l - 1, l) / 2^B, kept below for comparison
// only.
std::vector<double> apriori_log_weights(int block_size);
std::vector<double> apriori_log_weights_printed(int block_size);

// Symmetric transfer matrix with the a-priori weights split as sqrt(rho):
//   T(m, m') = sqrt(rho(m)) exp{ B [ (beta/4)(m^2 + m'^2) + alpha m m' ] } sqrt(rho(m'))
// Entries are stored scaled by exp(-log_scale) to keep trace powers finite;
// Z_periodic = exp(s * log_scale) * trace(T_scaled^s).
struct TransferMatrix {
  ChainSpec chain;
  std::vector<double> alphabet;  // lattice values, increasing
  Eigen::MatrixXd scaled;        // T * exp(-log_scale), strictly positive
  double log_scale = 0.0;

  int dim() const { return static_cast<int>(alphabet.size()); }
};

TransferMatrix build_transfer_matrix(const ChainSpec& chain);

// log partition function of the periodic chain, trace(T^s)
double log_partition_periodic(const TransferMatrix& t);

// free-boundary variant: rho^T T^{s-1} rho with the boundary weights unsplit
double log_partition_free(const TransferMatrix& t);

// single-site marginal P(m_k = a); translation invariant, so k-independent
std::vector<double> chain_marginal(const TransferMatrix& t);

// E[m_1 m_{1+d}] on the periodic chain
double two_point(const TransferMatrix& t, int distance);

// probability that every block value satisfies keep(m); masked-trace identity
double prob_all_blocks(const TransferMatrix& t, const std::function<bool(double)>& keep);

// probability that no adjacent pair has strictly opposite signs
double prob_no_sign_change(const TransferMatrix& t);

struct ChainStats {
  double mean_total = 0.0;          // E[(1/s) sum m_k], zero by symmetry
  double variance_per_block = 0.0;  // s * Var((1/s) sum m_k) = (1/s) Var(sum m_k)
  double correlation_length = 0.0;  // 1 / log(lambda_1 / lambda_2)
  double lambda1 = 0.0;             // top two transfer eigenvalues (scaled)
  double lambda2 = 0.0;
  double spectral_gap = 0.0;        // lambda1 - |lambda2|
};

ChainStats total_magnetization_stats(const ChainSpec& chain);

// CSV dump of the marginal and the two-point function up to max_distance
void dump_chain_csv(const TransferMatrix& t, int max_distance, std::ostream& os);

}  // namespace blockspin
