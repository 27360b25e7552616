#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "blockspin/model.hpp"
#include "blockspin/rng.hpp"

namespace blockspin {

// Seeded heat-bath MCMC on the per-block plus-spin counts, the sufficient
// statistic of mu_{N,beta,alpha}. One sweep is N single-site updates at
// uniformly random sites, which keeps the kernel reversible with respect to
// the Gibbs measure; exactness is certified by the detailed-balance test
// against enumeration, not by citation.

struct SamplerConfig {
  std::uint64_t seed = 1;
  int burn_in_sweeps = 0;
  int thinning_sweeps = 1;  // sweeps between emitted samples, >= 1
  int n_samples = 1;
  enum class Init { all_plus, all_minus, uniform_random, from_vector } init =
      Init::uniform_random;
  MagnetizationVector init_vector;  // used by Init::from_vector
  std::uint64_t stream = 0;         // replica index; (seed, stream) fixes the RNG

  void validate() const;
};

struct ChainState {
  BlockCounts counts;
  SplitMix64 rng{0};
  long sweep_index = 0;
};

ChainState make_chain_state(const ModelParams& params, const SamplerConfig& config);

// chance of the tagged-spin heat-bath move in block k changing the count by
// +1 / -1; everything else leaves the state unchanged
struct HeatBathRates {
  double up = 0.0;
  double down = 0.0;
};
HeatBathRates heat_bath_rates(const ModelParams& params, const BlockCounts& counts,
                              int block);

// One tagged-spin resample in block k driven by a single uniform u: the up
// move occupies [0, up) and the down move [1 - down, 1), so that
// update(-state, 1-u) mirrors update(state, u).
void single_site_update(const ModelParams& params, ChainState& state, int block,
                        double u);

// N single-site updates at uniformly random blocks
void sweep(const ModelParams& params, ChainState& state);

// burn-in, then n_samples magnetization vectors separated by thinning sweeps;
// fully deterministic given (seed, stream)
void run_chain(const ModelParams& params, const SamplerConfig& config,
               const std::function<void(const MagnetizationVector&)>& sink);

std::vector<MagnetizationVector> collect_samples(const ModelParams& params,
                                                 const SamplerConfig& config);

// integrated autocorrelation time per coordinate (initial-positive-sequence
// estimator), effective sample size, and split-chain R-hat
struct Diagnostics {
  std::vector<double> tau;
  std::vector<double> ess;
  std::vector<double> rhat;
  double min_ess() const;
};
Diagnostics diagnostics(const std::vector<MagnetizationVector>& samples);

// scalar-series variants used by the harness
double autocorrelation_time(const std::vector<double>& series);
double split_rhat(const std::vector<double>& series);

}  // namespace blockspin
