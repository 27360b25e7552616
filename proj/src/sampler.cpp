#include "blockspin/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blockspin {

void SamplerConfig::validate() const {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (thinning_sweeps < 1) throw std::invalid_argument("thinning must be >= 1");
  if (burn_in_sweeps < 0) throw std::invalid_argument("burn_in must be >= 0");
}

ChainState make_chain_state(const ModelParams& params, const SamplerConfig& config) {
  params.validate();
  config.validate();
  const int s = params.n_blocks;
  const int b = params.block_size();

  ChainState state;
  state.rng = SplitMix64::for_stream(config.seed, config.stream);
  state.counts.assign(s, 0);
  switch (config.init) {
    case SamplerConfig::Init::all_plus:
      std::fill(state.counts.begin(), state.counts.end(), b);
      break;
    case SamplerConfig::Init::all_minus:
      break;  // zero plus-spins
    case SamplerConfig::Init::uniform_random:
      for (int k = 0; k < s; ++k) {
        int c = 0;  // each spin i.i.d. fair
        for (int i = 0; i < b; ++i) c += static_cast<int>(state.rng.next() >> 63);
        state.counts[k] = c;
      }
      break;
    case SamplerConfig::Init::from_vector:
      state.counts = magnetization_to_counts(params, config.init_vector);
      break;
  }
  return state;
}

HeatBathRates heat_bath_rates(const ModelParams& params, const BlockCounts& counts,
                              int block) {
  const int s = params.n_blocks;
  const int b = params.block_size();
  const double inv_b = 1.0 / b;

  const int left = (block + s - 1) % s;
  const int right = (block + 1) % s;
  // signed block sums; tag_overlap counts how many of the two neighbor slots
  // wrap back onto the updated block itself (2 for s = 1, else 0)
  const int own = 2 * counts[block] - b;
  const int nb = (2 * counts[left] - b) + (2 * counts[right] - b);
  const int tag_overlap = (left == block) + (right == block);

  // local field h(sigma_tag) with the tagged spin removed from every sum it
  // appears in; P(new = +1) = 1 / (1 + e^{-2h})
  auto p_plus = [&](int tag) {
    const double h =
        inv_b * (params.beta * (own - tag) + params.alpha * (nb - tag * tag_overlap));
    return 1.0 / (1.0 + std::exp(-2.0 * h));
  };

  HeatBathRates rates;
  const double frac_minus = static_cast<double>(b - counts[block]) * inv_b;
  const double frac_plus = static_cast<double>(counts[block]) * inv_b;
  if (counts[block] < b) rates.up = frac_minus * p_plus(-1);
  if (counts[block] > 0) rates.down = frac_plus * (1.0 - p_plus(+1));
  return rates;
}

void single_site_update(const ModelParams& params, ChainState& state, int block,
                        double u) {
  const HeatBathRates rates = heat_bath_rates(params, state.counts, block);
  if (u < rates.up) {
    ++state.counts[block];
  } else if (u >= 1.0 - rates.down) {
    --state.counts[block];
  }
  assert(state.counts[block] >= 0 && state.counts[block] <= params.block_size());
}

void sweep(const ModelParams& params, ChainState& state) {
  const int s = params.n_blocks;
  for (int step = 0; step < params.n_spins; ++step) {
    const int block = static_cast<int>(state.rng.next_below(static_cast<std::uint32_t>(s)));
    const double u = state.rng.next_double();
    single_site_update(params, state, block, u);
  }
  ++state.sweep_index;
}

void run_chain(const ModelParams& params, const SamplerConfig& config,
               const std::function<void(const MagnetizationVector&)>& sink) {
  ChainState state = make_chain_state(params, config);
  for (int i = 0; i < config.burn_in_sweeps; ++i) sweep(params, state);
  for (int n = 0; n < config.n_samples; ++n) {
    for (int i = 0; i < config.thinning_sweeps; ++i) sweep(params, state);
    sink(counts_to_magnetization(params, state.counts));
  }
}

std::vector<MagnetizationVector> collect_samples(const ModelParams& params,
                                                 const SamplerConfig& config) {
  std::vector<MagnetizationVector> samples;
  samples.reserve(config.n_samples);
  run_chain(params, config,
            [&](const MagnetizationVector& m) { samples.push_back(m); });
  return samples;
}

double autocorrelation_time(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 4) return 1.0;
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);

  auto gamma = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      acc += (series[i] - mean) * (series[i + lag] - mean);
    return acc / static_cast<double>(n);
  };
  const double g0 = gamma(0);
  if (g0 <= 0.0) return static_cast<double>(n);  // constant series: no information

  // Geyer initial positive sequence: sum consecutive-pair autocovariances
  // while they stay positive
  double tau = -1.0;  // running 2 * sum gamma_t / g0 starts from t = 0 pair
  for (std::size_t m = 0; 2 * m + 1 < n / 2; ++m) {
    const double pair = gamma(2 * m) + gamma(2 * m + 1);
    if (pair <= 0.0) break;
    tau += 2.0 * pair / g0;
  }
  return std::max(tau, 1.0);
}

double split_rhat(const std::vector<double>& series) {
  const std::size_t n2 = series.size() / 2;
  if (n2 < 2) return std::numeric_limits<double>::quiet_NaN();
  auto moments = [&](std::size_t begin) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n2; ++i) mean += series[begin + i];
    mean /= static_cast<double>(n2);
    double var = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
      const double d = series[begin + i] - mean;
      var += d * d;
    }
    return std::pair<double, double>(mean, var / static_cast<double>(n2 - 1));
  };
  const auto [m1, v1] = moments(0);
  const auto [m2, v2] = moments(n2);
  const double w = 0.5 * (v1 + v2);
  if (w == 0.0) return 1.0;
  const double mbar = 0.5 * (m1 + m2);
  const double b = static_cast<double>(n2) *
                   ((m1 - mbar) * (m1 - mbar) + (m2 - mbar) * (m2 - mbar));
  const double var_plus =
      (static_cast<double>(n2 - 1) / n2) * w + b / static_cast<double>(n2);
  return std::sqrt(var_plus / w);
}

Diagnostics diagnostics(const std::vector<MagnetizationVector>& samples) {
  if (samples.size() < 100)
    throw std::invalid_argument("diagnostics need at least 100 samples");
  const std::size_t dim = samples.front().size();
  Diagnostics d;
  d.tau.resize(dim);
  d.ess.resize(dim);
  d.rhat.resize(dim);
  std::vector<double> series(samples.size());
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < samples.size(); ++i) series[i] = samples[i][k];
    d.tau[k] = autocorrelation_time(series);
    d.ess[k] = static_cast<double>(samples.size()) / d.tau[k];
    d.rhat[k] = split_rhat(series);
  }
  return d;
}

double Diagnostics::min_ess() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : ess) m = std::min(m, v);
  return m;
}

}  // namespace blockspin
