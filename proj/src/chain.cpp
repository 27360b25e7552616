#include "blockspin/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "blockspin/io.hpp"

namespace blockspin {

namespace {

void check_chain(const ChainSpec& chain) {
  if (chain.block_size < 1) throw std::invalid_argument("block_size must be >= 1");
  if (chain.n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
}

// sum_i lambda_i^s in log space, scaled by the top magnitude; valid for mixed
// signs as long as the total is positive (Perron root dominates for our
// nonnegative matrices)
double log_power_trace(const Eigen::VectorXd& eig, int s) {
  const double top = eig.cwiseAbs().maxCoeff();
  if (top == 0.0) return -std::numeric_limits<double>::infinity();
  long double acc = 0.0L;
  for (int i = 0; i < eig.size(); ++i)
    acc += std::pow((long double)(eig[i] / top), s);
  if (acc <= 0.0L)
    throw std::runtime_error("power trace lost positivity");
  return s * std::log(top) + static_cast<double>(std::log(acc));
}

struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

EigenSystem eigensystem(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("transfer matrix eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

std::vector<double> apriori_log_weights(int block_size) {
  std::vector<double> w(block_size + 1);
  for (int l = 0; l <= block_size; ++l)
    w[l] = std::lgamma(block_size + 1.0) - std::lgamma(l + 1.0) -
           std::lgamma(block_size - l + 1.0) - block_size * std::log(2.0);
  return w;
}

std::vector<double> apriori_log_weights_printed(int block_size) {
  // binom(B + l - 1, l) / 2^B, as printed in the source material; disagrees
  // with the spin-level count and is kept only for side-by-side comparison
  std::vector<double> w(block_size + 1);
  for (int l = 0; l <= block_size; ++l)
    w[l] = std::lgamma(block_size + l + 0.0) - std::lgamma(l + 1.0) -
           std::lgamma(block_size + 0.0) - block_size * std::log(2.0);
  return w;
}

TransferMatrix build_transfer_matrix(const ChainSpec& chain) {
  check_chain(chain);
  const int b = chain.block_size;
  const int n = b + 1;
  const std::vector<double> logw = apriori_log_weights(b);

  TransferMatrix t;
  t.chain = chain;
  t.alphabet.resize(n);
  for (int l = 0; l <= b; ++l) t.alphabet[l] = lattice_value(l, b);

  auto exponent = [&](int a, int c) {
    const double ma = t.alphabet[a], mc = t.alphabet[c];
    return 0.5 * logw[a] + 0.5 * logw[c] +
           b * (0.25 * chain.beta * (ma * ma + mc * mc) + chain.alpha * ma * mc);
  };
  double top = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) top = std::max(top, exponent(a, c));
  t.log_scale = top;
  t.scaled.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) t.scaled(a, c) = std::exp(exponent(a, c) - top);
  return t;
}

double log_partition_periodic(const TransferMatrix& t) {
  const EigenSystem es = eigensystem(t.scaled);
  return t.chain.n_blocks * t.log_scale + log_power_trace(es.values, t.chain.n_blocks);
}

double log_partition_free(const TransferMatrix& t) {
  const int s = t.chain.n_blocks;
  const int n = t.dim();
  const std::vector<double> logw = apriori_log_weights(t.chain.block_size);
  // boundary vector v(a) = sqrt(rho(a)) e^{B beta m_a^2 / 4}: the sqrt(rho)
  // halves and the half site terms that the missing bond would have carried
  Eigen::VectorXd v(n);
  for (int a = 0; a < n; ++a)
    v[a] = std::exp(0.5 * logw[a] + 0.25 * t.chain.block_size * t.chain.beta *
                                        t.alphabet[a] * t.alphabet[a]);
  if (s == 1) {
    long double z = 0.0L;
    for (int a = 0; a < n; ++a) z += (long double)(v[a] * v[a]);
    return static_cast<double>(std::log(z));
  }
  const EigenSystem es = eigensystem(t.scaled);
  const Eigen::VectorXd proj = es.vectors.transpose() * v;
  const double top = es.values.cwiseAbs().maxCoeff();
  long double acc = 0.0L;
  for (int i = 0; i < n; ++i)
    acc += (long double)(proj[i] * proj[i]) *
           std::pow((long double)(es.values[i] / top), s - 1);
  return (s - 1) * (t.log_scale + std::log(top)) + static_cast<double>(std::log(acc));
}

std::vector<double> chain_marginal(const TransferMatrix& t) {
  const int s = t.chain.n_blocks;
  const int n = t.dim();
  const EigenSystem es = eigensystem(t.scaled);
  const double top = es.values.cwiseAbs().maxCoeff();

  // P(m_k = a) = [T^s]_{aa} / trace(T^s); the scale cancels
  long double z = 0.0L;
  for (int i = 0; i < n; ++i) z += std::pow((long double)(es.values[i] / top), s);
  std::vector<double> marg(n);
  for (int a = 0; a < n; ++a) {
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i)
      acc += (long double)(es.vectors(a, i) * es.vectors(a, i)) *
             std::pow((long double)(es.values[i] / top), s);
    marg[a] = static_cast<double>(acc / z);
  }
  return marg;
}

double two_point(const TransferMatrix& t, int distance) {
  const int s = t.chain.n_blocks;
  if (distance < 0 || distance > s)
    throw std::invalid_argument("distance out of range");
  const int n = t.dim();
  const EigenSystem es = eigensystem(t.scaled);
  const double top = es.values.cwiseAbs().maxCoeff();

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) d(a, a) = t.alphabet[a];
  const Eigen::MatrixXd w = es.vectors.transpose() * d * es.vectors;

  long double z = 0.0L;
  for (int i = 0; i < n; ++i) z += std::pow((long double)(es.values[i] / top), s);
  long double acc = 0.0L;
  for (int i = 0; i < n; ++i) {
    const long double pi = std::pow((long double)(es.values[i] / top), distance);
    if (pi == 0.0L) continue;
    for (int j = 0; j < n; ++j) {
      const long double pj = std::pow((long double)(es.values[j] / top), s - distance);
      acc += pi * pj * (long double)(w(i, j) * w(i, j));
    }
  }
  return static_cast<double>(acc / z);
}

double prob_all_blocks(const TransferMatrix& t,
                       const std::function<bool(double)>& keep) {
  const int n = t.dim();
  std::vector<int> idx;
  for (int a = 0; a < n; ++a)
    if (keep(t.alphabet[a])) idx.push_back(a);
  if (idx.empty()) return 0.0;

  Eigen::MatrixXd sub(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      sub(i, j) = t.scaled(idx[i], idx[j]);

  const int s = t.chain.n_blocks;
  const EigenSystem full = eigensystem(t.scaled);
  const EigenSystem masked = eigensystem(sub);
  const double top = full.values.cwiseAbs().maxCoeff();
  long double z = 0.0L, zm = 0.0L;
  for (int i = 0; i < full.values.size(); ++i)
    z += std::pow((long double)(full.values[i] / top), s);
  for (int i = 0; i < masked.values.size(); ++i)
    zm += std::pow((long double)(masked.values[i] / top), s);
  return static_cast<double>(zm / z);
}

double prob_no_sign_change(const TransferMatrix& t) {
  const int n = t.dim();
  Eigen::MatrixXd masked = t.scaled;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (t.alphabet[a] * t.alphabet[c] < 0.0) masked(a, c) = 0.0;
  const int s = t.chain.n_blocks;
  const EigenSystem full = eigensystem(t.scaled);
  const EigenSystem m = eigensystem(masked);
  const double top = full.values.cwiseAbs().maxCoeff();
  long double z = 0.0L, zm = 0.0L;
  for (int i = 0; i < n; ++i) z += std::pow((long double)(full.values[i] / top), s);
  for (int i = 0; i < n; ++i) zm += std::pow((long double)(m.values[i] / top), s);
  return static_cast<double>(zm / z);
}

ChainStats total_magnetization_stats(const ChainSpec& chain) {
  const TransferMatrix t = build_transfer_matrix(chain);
  const int s = chain.n_blocks;
  const std::vector<double> marg = chain_marginal(t);

  ChainStats stats;
  for (int a = 0; a < t.dim(); ++a) stats.mean_total += marg[a] * t.alphabet[a];

  // s * Var((1/s) sum m_k) = (1/s) sum_{j,k} E[m_j m_k] = sum_d E[m_1 m_{1+d}]
  long double var = 0.0L;
  for (int d = 0; d < s; ++d) var += (long double)two_point(t, d);
  stats.variance_per_block = static_cast<double>(var) -
                             s * stats.mean_total * stats.mean_total;

  const EigenSystem es = eigensystem(t.scaled);
  Eigen::VectorXd sorted = es.values;
  std::sort(sorted.data(), sorted.data() + sorted.size(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  stats.lambda1 = sorted[0];
  stats.lambda2 = sorted.size() > 1 ? sorted[1] : 0.0;
  stats.spectral_gap = stats.lambda1 - std::abs(stats.lambda2);
  stats.correlation_length =
      stats.lambda2 != 0.0 ? 1.0 / std::log(stats.lambda1 / std::abs(stats.lambda2))
                           : 0.0;
  return stats;
}

void dump_chain_csv(const TransferMatrix& t, int max_distance, std::ostream& os) {
  const std::vector<double> marg = chain_marginal(t);
  os << "value,marginal\n";
  for (int a = 0; a < t.dim(); ++a)
    os << format_double(t.alphabet[a]) << "," << format_double(marg[a]) << "\n";
  os << "distance,two_point\n";
  for (int d = 0; d <= max_distance && d <= t.chain.n_blocks; ++d)
    os << d << "," << format_double(two_point(t, d)) << "\n";
}

}  // namespace blockspin
