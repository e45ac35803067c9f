#pragma once

#include <cmath>
#include <cstdint>

namespace rqinv {

/// splitmix64: counter-based generator (constant-increment state with an
/// output hash). Bit-reproducible everywhere; no standard-library
/// distributions are involved anywhere downstream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate via inverse transform; rate > 0.
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

 private:
  std::uint64_t state_;
};

/// Independent stream for (seed, stream index): remix the pair through the
/// generator so nearby seeds/streams land far apart in state space.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mixer(seed ^ (0xA24BAED4963EE407ull * (stream + 1)));
  mixer();
  const std::uint64_t state = mixer();
  return SplitMix64(state);
}

}  // namespace rqinv
