#include "blockspin/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blockspin {

void ModelParams::validate() const {
  if (n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
  if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
  if (n_spins % n_blocks != 0)
    throw std::invalid_argument("n_spins must be divisible by n_blocks");
  if (mode == ParamMode::strict) {
    if (!(beta > 2.0 * alpha && alpha > 0.0))
      throw std::invalid_argument("strict mode requires beta > 2*alpha > 0");
  } else {
    if (!(alpha >= 0.0 && beta >= 2.0 * alpha))
      throw std::invalid_argument("relaxed mode requires beta >= 2*alpha >= 0");
  }
}

namespace {

// per-block spin sums; validates sigma
std::vector<int> block_sums(const ModelParams& params, const std::vector<int>& sigma) {
  params.validate();
  if (static_cast<int>(sigma.size()) != params.n_spins)
    throw std::invalid_argument("sigma has wrong length");
  const int s = params.n_blocks;
  const int b = params.block_size();
  std::vector<int> sums(s, 0);
  for (int k = 0; k < s; ++k) {
    int acc = 0;
    for (int i = k * b; i < (k + 1) * b; ++i) {
      if (sigma[i] != 1 && sigma[i] != -1)
        throw std::invalid_argument("sigma entries must be +1 or -1");
      acc += sigma[i];
    }
    sums[k] = acc;
  }
  return sums;
}

}  // namespace

double hamiltonian_spins(const ModelParams& params, const std::vector<int>& sigma) {
  const std::vector<int> sums = block_sums(params, sigma);
  const int s = params.n_blocks;
  const double scale = static_cast<double>(s) / params.n_spins;
  // H = (s/N) sum_k [ (beta/2) B_k^2 + (alpha/2) B_k (B_{k-1} + B_{k+1}) ],
  // with wrapped indices; for s = 1, 2 the wrap reproduces the printed
  // conventions A = [beta+2alpha] and A = [[beta, 2alpha], [2alpha, beta]].
  double h = 0.0;
  for (int k = 0; k < s; ++k) {
    const double bk = sums[k];
    const double nb = sums[(k + s - 1) % s] + sums[(k + 1) % s];
    h += 0.5 * params.beta * bk * bk + 0.5 * params.alpha * bk * nb;
  }
  return scale * h;
}

MagnetizationVector block_magnetization(const ModelParams& params,
                                        const std::vector<int>& sigma) {
  const std::vector<int> sums = block_sums(params, sigma);
  const int b = params.block_size();
  MagnetizationVector m(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k)
    m[k] = static_cast<double>(sums[k]) / b;
  return m;
}

double hamiltonian_blocks(const ModelParams& params, const MagnetizationVector& m) {
  params.validate();
  const int s = params.n_blocks;
  if (static_cast<int>(m.size()) != s)
    throw std::invalid_argument("magnetization vector has wrong length");
  double quad = 0.0;
  for (int k = 0; k < s; ++k) {
    const double nb = m[(k + s - 1) % s] + m[(k + 1) % s];
    quad += params.beta * m[k] * m[k] + params.alpha * m[k] * nb;
  }
  return 0.5 * (static_cast<double>(params.n_spins) / s) * quad;
}

double lattice_value(int plus_count, int block_size) {
  return static_cast<double>(2 * plus_count - block_size) / block_size;
}

int lattice_index(double m_k, int block_size) {
  const double k = 0.5 * (1.0 + m_k) * block_size;
  const double rounded = std::round(k);
  if (std::abs(k - rounded) > 1e-9 * block_size || rounded < 0 || rounded > block_size)
    throw std::invalid_argument("value " + std::to_string(m_k) + " is off the lattice");
  return static_cast<int>(rounded);
}

double log_prior_weight(const ModelParams& params, double m_k) {
  params.validate();
  const int b = params.block_size();
  const int j = lattice_index(m_k, b);
  return std::lgamma(b + 1.0) - std::lgamma(j + 1.0) - std::lgamma(b - j + 1.0) -
         b * std::log(2.0);
}

std::vector<double> lattice_grid(const ModelParams& params) {
  params.validate();
  const int b = params.block_size();
  std::vector<double> grid(b + 1);
  for (int k = 0; k <= b; ++k) grid[k] = lattice_value(k, b);
  return grid;
}

MagnetizationVector counts_to_magnetization(const ModelParams& params,
                                            const BlockCounts& counts) {
  const int b = params.block_size();
  MagnetizationVector m(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) m[k] = lattice_value(counts[k], b);
  return m;
}

BlockCounts magnetization_to_counts(const ModelParams& params,
                                    const MagnetizationVector& m) {
  const int b = params.block_size();
  BlockCounts counts(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) counts[k] = lattice_index(m[k], b);
  return counts;
}

}  // namespace blockspin
