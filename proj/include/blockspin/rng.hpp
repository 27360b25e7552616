#pragma once

#include <cstdint>

namespace blockspin {

// Splittable 64-bit generator (SplitMix64 core). Every consumer derives its
// stream from (seed, stream_id), so replica sets reproduce independently of
// scheduling order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed);
    // fold the stream id through one mixing round so streams decorrelate
    g.state_ = mix(g.state_ + 0x9e3779b97f4a7c15ULL * (stream + 1));
    g.state_ = mix(g.state_ ^ 0xbf58476d1ce4e5b9ULL);
    return g;
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform double in [0, 1), 53 random bits
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n >= 1 (Lemire multiply-shift; bias < 2^-32 for
  // the small n used here, which is irrelevant next to Monte Carlo error)
  std::uint32_t next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(next())) * n) >> 32);
  }

  std::uint64_t state() const { return state_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace blockspin
