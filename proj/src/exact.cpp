#include "blockspin/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "blockspin/circulant.hpp"
#include "blockspin/io.hpp"
#include "blockspin/landscape.hpp"
#include "blockspin/parallel.hpp"

namespace blockspin {

namespace {

std::int64_t state_count(const ModelParams& params) {
  const std::int64_t base = params.block_size() + 1;
  std::int64_t n = 1;
  for (int k = 0; k < params.n_blocks; ++k) {
    if (n > (std::int64_t{1} << 62) / base) return std::int64_t{1} << 62;
    n *= base;
  }
  return n;
}

// log weight of one state: (N / 2s) m^T A m + sum_k log prior(m_k).
// Written so that sign-flipped states produce bit-identical values: the m_k
// come from (2n - B)/B (exact negation under n -> B-n) and every product of
// two entries is sign-invariant.
struct WeightEvaluator {
  ModelParams params;
  std::vector<double> values;      // lattice values per count
  std::vector<double> log_priors;  // log prior per count
  double half_nb;                  // N / (2 s) = B / 2

  explicit WeightEvaluator(const ModelParams& p) : params(p) {
    const int b = p.block_size();
    values.resize(b + 1);
    log_priors.resize(b + 1);
    for (int k = 0; k <= b; ++k) {
      values[k] = lattice_value(k, b);
      log_priors[k] = log_prior_weight(p, values[k]);
    }
    half_nb = 0.5 * b;
  }

  double log_weight(const BlockCounts& counts) const {
    const int s = params.n_blocks;
    double quad = 0.0, prior = 0.0;
    for (int k = 0; k < s; ++k) {
      const double mk = values[counts[k]];
      const double nb = values[counts[(k + s - 1) % s]] + values[counts[(k + 1) % s]];
      quad += params.beta * mk * mk + params.alpha * mk * nb;
      prior += log_priors[counts[k]];
    }
    return half_nb * quad + prior;
  }
};

// odometer increment over counts in [0, B]^s, most significant digit first
bool advance(BlockCounts& counts, int b) {
  for (int k = static_cast<int>(counts.size()) - 1; k >= 0; --k) {
    if (counts[k] < b) {
      ++counts[k];
      std::fill(counts.begin() + k + 1, counts.end(), 0);
      return true;
    }
  }
  return false;
}

struct LogSumExp {
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;  // sum of exp(logw - max)

  void add(double logw) {
    if (logw <= max) {
      sum += std::exp(logw - max);
    } else {
      sum = sum * std::exp(max - logw) + 1.0;
      max = logw;
    }
  }
  void merge(const LogSumExp& o) {
    if (o.sum == 0.0) return;
    if (o.max <= max) {
      sum += o.sum * std::exp(o.max - max);
    } else {
      sum = sum * std::exp(max - o.max) + o.sum;
      max = o.max;
    }
  }
  double value() const { return max + std::log(sum); }
};

}  // namespace

BlockCounts ExactLaw::counts_at(std::int64_t rank) const {
  const int b = params.block_size();
  BlockCounts counts(params.n_blocks);
  for (int k = params.n_blocks - 1; k >= 0; --k) {
    counts[k] = static_cast<int>(rank % (b + 1));
    rank /= (b + 1);
  }
  return counts;
}

MagnetizationVector ExactLaw::magnetization_at(std::int64_t rank) const {
  return counts_to_magnetization(params, counts_at(rank));
}

std::int64_t ExactLaw::rank_of(const BlockCounts& counts) const {
  const int b = params.block_size();
  std::int64_t rank = 0;
  for (int k = 0; k < params.n_blocks; ++k) rank = rank * (b + 1) + counts[k];
  return rank;
}

double ExactLaw::prob(std::int64_t rank) const { return std::exp(log_probs[rank]); }

ExactLaw exact_law(const ModelParams& params, std::int64_t budget) {
  params.validate();
  const std::int64_t n = state_count(params);
  if (n > budget)
    throw std::length_error("enumeration budget exceeded; use the sampler instead");

  const WeightEvaluator eval(params);
  ExactLaw law;
  law.params = params;
  law.log_probs.resize(static_cast<std::size_t>(n));

  BlockCounts counts(params.n_blocks, 0);
  LogSumExp lse;
  std::int64_t rank = 0;
  do {
    const double lw = eval.log_weight(counts);
    law.log_probs[rank++] = lw;
    lse.add(lw);
  } while (advance(counts, params.block_size()));

  law.log_Z = lse.value();  // priors already carry the 2^-N reference measure
  for (double& lp : law.log_probs) lp -= law.log_Z;
  return law;
}

double exact_log_Z(const ModelParams& params, int threads, std::int64_t budget) {
  params.validate();
  if (state_count(params) > budget)
    throw std::length_error("enumeration budget exceeded; use the sampler instead");

  const WeightEvaluator eval(params);
  const int b = params.block_size();
  const int s = params.n_blocks;

  if (s == 1) {
    LogSumExp lse;
    BlockCounts counts(1, 0);
    for (int k = 0; k <= b; ++k) {
      counts[0] = k;
      lse.add(eval.log_weight(counts));
    }
    return lse.value();
  }

  // one partial per leading digit; merged in digit order afterwards, so the
  // result does not depend on the worker count
  std::vector<LogSumExp> partials(b + 1);
  parallel_for(b + 1, threads, [&](int lead) {
    BlockCounts counts(s, 0);
    counts[0] = lead;
    LogSumExp local;
    do {
      local.add(eval.log_weight(counts));
      // advance only digits 1..s-1
      int k = s - 1;
      for (; k >= 1; --k) {
        if (counts[k] < b) {
          ++counts[k];
          std::fill(counts.begin() + k + 1, counts.end(), 0);
          break;
        }
      }
      if (k == 0) break;
    } while (true);
    partials[lead] = local;
  });

  LogSumExp total;
  for (const auto& p : partials) total.merge(p);
  return total.value();
}

ExactLaw spin_level_law(const ModelParams& params) {
  params.validate();
  if (params.n_spins > 26)
    throw std::length_error("spin-level enumeration capped at N = 26");

  const int n = params.n_spins;
  const int s = params.n_blocks;
  const int b = params.block_size();
  const double scale = static_cast<double>(s) / n;

  ExactLaw law;
  law.params = params;
  const std::int64_t n_states = state_count(params);
  // accumulate bin masses in extended precision; the TV targets are 1e-12
  std::vector<long double> mass(static_cast<std::size_t>(n_states), 0.0L);

  std::vector<int> sums(s);
  BlockCounts counts(s);
  long double total = 0.0L;
  for (std::uint32_t bits = 0;; ++bits) {
    for (int k = 0; k < s; ++k) {
      int acc = 0;
      for (int i = k * b; i < (k + 1) * b; ++i)
        acc += ((bits >> i) & 1u) ? 1 : -1;
      sums[k] = acc;
      counts[k] = (acc + b) / 2;
    }
    double h = 0.0;
    for (int k = 0; k < s; ++k) {
      const double bk = sums[k];
      const double nb = sums[(k + s - 1) % s] + sums[(k + 1) % s];
      h += 0.5 * params.beta * bk * bk + 0.5 * params.alpha * bk * nb;
    }
    h *= scale;
    std::int64_t rank = 0;
    for (int k = 0; k < s; ++k) rank = rank * (b + 1) + counts[k];
    const long double w = std::exp((long double)h);
    mass[rank] += w;
    total += w;
    if (bits == (std::uint32_t{1} << n) - 1) break;
  }

  law.log_probs.resize(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i)
    law.log_probs[i] = mass[i] > 0.0L
                           ? static_cast<double>(std::log(mass[i] / total))
                           : -std::numeric_limits<double>::infinity();
  // Z = E_rho[e^H] = total / 2^N
  law.log_Z = static_cast<double>(std::log(total)) - n * std::log(2.0);
  return law;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> exact_moments(const ExactLaw& law, int d) {
  if (d < 1 || d > law.params.n_blocks)
    throw std::invalid_argument("d must be in [1, s]");
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
  for (std::int64_t r = 0; r < law.n_states(); ++r) {
    const double p = law.prob(r);
    if (p == 0.0) continue;
    const MagnetizationVector m = law.magnetization_at(r);
    for (int i = 0; i < d; ++i) {
      mean[i] += p * m[i];
      for (int j = 0; j < d; ++j) second(i, j) += p * m[i] * m[j];
    }
  }
  return {mean, second - mean * mean.transpose()};
}

ExactLaw conditional_law(const ExactLaw& law, const MagnetizationVector& center,
                         double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (static_cast<int>(center.size()) != law.params.n_blocks)
    throw std::invalid_argument("center has wrong length");

  ExactLaw out;
  out.params = law.params;
  out.log_probs.assign(law.log_probs.size(),
                       -std::numeric_limits<double>::infinity());
  LogSumExp lse;
  bool any = false;
  const double r2 = radius * radius;
  for (std::int64_t r = 0; r < law.n_states(); ++r) {
    if (law.log_probs[r] == -std::numeric_limits<double>::infinity()) continue;
    const MagnetizationVector m = law.magnetization_at(r);
    double d2 = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      const double dk = m[k] - center[k];
      d2 += dk * dk;
    }
    if (d2 <= r2) {
      out.log_probs[r] = law.log_probs[r];
      lse.add(law.log_probs[r]);
      any = true;
    }
  }
  if (!any) throw std::domain_error("conditioning set is empty");
  const double log_mass = lse.value();
  for (double& lp : out.log_probs)
    if (lp != -std::numeric_limits<double>::infinity()) lp -= log_mass;
  out.log_Z = law.log_Z + log_mass;
  return out;
}

double total_variation(const ExactLaw& a, const ExactLaw& b) {
  if (a.n_states() != b.n_states())
    throw std::invalid_argument("laws live on different state spaces");
  long double acc = 0.0L;
  for (std::int64_t r = 0; r < a.n_states(); ++r)
    acc += std::abs((long double)a.prob(r) - (long double)b.prob(r));
  return static_cast<double>(0.5L * acc);
}

void dump_csv(const ExactLaw& law, std::ostream& os) {
  const int s = law.params.n_blocks;
  for (int k = 1; k <= s; ++k) os << "m_" << k << ",";
  os << "log_prob\n";
  for (std::int64_t r = 0; r < law.n_states(); ++r) {
    const MagnetizationVector m = law.magnetization_at(r);
    for (double v : m) os << format_double(v) << ",";
    os << format_double(law.log_probs[r]) << "\n";
  }
}

double hs_log_density_mixture(const ModelParams& params, const ExactLaw& law,
                              const std::vector<double>& x) {
  const CirculantSpec spec = CirculantSpec::from_params(params);
  const int s = spec.size;
  if (static_cast<int>(x.size()) != s)
    throw std::invalid_argument("x has wrong length");
  // Gaussian with covariance A^{-1}: density = sqrt(det A / (2 pi)^s)
  //   * exp(-(1/2)(x - mu)^T A (x - mu))
  double log_det = 0.0;
  for (double lam : eigenvalues(spec)) {
    if (lam <= 0.0) throw std::domain_error("A must be positive definite");
    log_det += std::log(lam);
  }
  const double log_norm = 0.5 * log_det - 0.5 * s * std::log(2.0 * std::numbers::pi);
  const double scale = std::sqrt(static_cast<double>(params.n_spins) / s);

  LogSumExp lse;
  std::vector<double> diff(s), adiff(s);
  for (std::int64_t r = 0; r < law.n_states(); ++r) {
    const double lp = law.log_probs[r];
    if (lp == -std::numeric_limits<double>::infinity()) continue;
    const MagnetizationVector m = law.magnetization_at(r);
    for (int k = 0; k < s; ++k) diff[k] = x[k] - scale * m[k];
    spec.apply(diff.data(), adiff.data());
    double quad = 0.0;
    for (int k = 0; k < s; ++k) quad += diff[k] * adiff[k];
    lse.add(lp + log_norm - 0.5 * quad);
  }
  return lse.value();
}

double hs_log_density_exponent(const ModelParams& params, const std::vector<double>& x) {
  const CirculantSpec spec = CirculantSpec::from_params(params);
  const double ratio = static_cast<double>(params.n_spins) / spec.size;
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] / std::sqrt(ratio);
  return -ratio * phi(spec, y);
}

namespace {

// composite Simpson for the rhs normalization, s <= 2. The integrand is
// dominated by exp(-theta (1 - theta) |x|^2 / 2) in high temperature and by
// the (possibly bimodal) wells otherwise; [-L, L] with L = 40 + sqrt(N/s)
// covers both at double precision.
double hs_quadrature_log_z(const ModelParams& params) {
  const CirculantSpec spec = CirculantSpec::from_params(params);
  const int s = spec.size;
  const double l = 40.0 + std::sqrt(static_cast<double>(params.n_spins) / s);
  auto exponent = [&](const std::vector<double>& x) {
    return hs_log_density_exponent(params, x);
  };
  if (s == 1) {
    const int n = 1 << 16;
    const double h = 2.0 * l / n;
    LogSumExp lse;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      lse.add(exponent({-l + i * h}) + std::log(w));
    }
    return lse.value() + std::log(h / 3.0);
  }
  const int n = 1 << 12;
  const double h = 2.0 * l / n;
  LogSumExp lse;
  std::vector<double> x(2);
  for (int i = 0; i <= n; ++i) {
    const double wi = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    x[0] = -l + i * h;
    for (int j = 0; j <= n; ++j) {
      const double wj = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      x[1] = -l + j * h;
      lse.add(exponent(x) + std::log(wi * wj));
    }
  }
  return lse.value() + 2.0 * std::log(h / 3.0);
}

}  // namespace

HsDensity hs_density_check(const ModelParams& params, const std::vector<double>& x) {
  params.validate();
  if (params.n_blocks > 2)
    throw std::invalid_argument(
        "quadrature normalization is restricted to s <= 2; compare log-density "
        "ratios instead");
  const ExactLaw law = exact_law(params);
  HsDensity out;
  out.lhs = std::exp(hs_log_density_mixture(params, law, x));
  out.rhs = std::exp(hs_log_density_exponent(params, x) - hs_quadrature_log_z(params));
  return out;
}

}  // namespace blockspin
