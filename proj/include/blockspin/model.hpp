#pragma once

#include <vector>

namespace blockspin {

using MagnetizationVector = std::vector<double>;  // one entry per block, in [-1,1]
using BlockCounts = std::vector<int>;             // plus-spin count per block, in [0, N/s]

enum class ParamMode {
  strict,   // beta > 2*alpha > 0, the positive-definite interaction cone
  relaxed,  // beta >= 2*alpha >= 0, allows the independent-blocks and zero-field checks
};

// The tuple (beta, alpha, N, s_N). Single source of truth for every module.
struct ModelParams {
  double beta = 0.0;       // coupling within blocks
  double alpha = 0.0;      // coupling between cyclically neighboring blocks
  int n_spins = 0;         // N
  int n_blocks = 0;        // s_N
  ParamMode mode = ParamMode::strict;

  int block_size() const { return n_spins / n_blocks; }
  double total_temperature() const { return beta + 2.0 * alpha; }

  // throws std::invalid_argument on violated invariants
  void validate() const;
};

// H_N(sigma); the within-block double sum keeps the i=j diagonal terms, which
// makes the block rewrite below exact. Block k occupies indices
// [k*N/s, (k+1)*N/s) and block indices wrap cyclically.
double hamiltonian_spins(const ModelParams& params, const std::vector<int>& sigma);

// m_k = (s/N) * sum of spins in block k
MagnetizationVector block_magnetization(const ModelParams& params,
                                        const std::vector<int>& sigma);

// H as a function of the block magnetization: (1/2)(N/s) m^T A m. Agrees with
// hamiltonian_spins exactly for on-lattice m.
double hamiltonian_blocks(const ModelParams& params, const MagnetizationVector& m);

// log of the a-priori weight 2^{-B} * binom(B, B(1+m_k)/2) of one block value,
// B = N/s. Throws if m_k is off the lattice A_N.
double log_prior_weight(const ModelParams& params, double m_k);

// The lattice A_N = {-1 + 2k s/N : k = 0..N/s}, strictly increasing.
std::vector<double> lattice_grid(const ModelParams& params);

// count <-> lattice-value maps. lattice_value uses (2k - B)/B, which is exactly
// antisymmetric under k -> B-k in floating point; flip symmetry tests rely on it.
double lattice_value(int plus_count, int block_size);
int lattice_index(double m_k, int block_size);  // throws if off-lattice

MagnetizationVector counts_to_magnetization(const ModelParams& params,
                                            const BlockCounts& counts);
BlockCounts magnetization_to_counts(const ModelParams& params,
                                    const MagnetizationVector& m);

}  // namespace blockspin
