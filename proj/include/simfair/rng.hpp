#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace simfair {

// Deterministic random stream used everywhere randomness is needed.
//
// Generator family (fixed for reproducibility): mt19937_64 keyed through
// splitmix64, with label-based domain separation so independent sub-streams
// (scenario placement, Monte-Carlo noise, GA operators, ...) can be derived
// from one run seed. All distribution mappings are spelled out explicitly
// instead of going through std:: distributions, whose algorithms are
// implementation-defined; sequences are therefore identical across platforms
// and standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::string_view label = {});

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  // Uniform on {0, 1, ..., n - 1}, unbiased (rejection sampling). n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via Box-Muller (second value of each pair is cached).
  double gaussian();

  // Circularly symmetric CN(0, 1): real/imag parts are N(0, 1/2).
  std::complex<double> complex_gaussian();

  // Independent stream derived from this stream's key and an index. Derivation
  // uses the original key, not the current state, so substreams do not depend
  // on how much of the parent stream has been consumed.
  RandomStream substream(std::uint64_t index) const;

  // Checkpointable state.
  std::string serialize() const;
  static RandomStream deserialize(const std::string& state);

  std::uint64_t raw();

 private:
  RandomStream() = default;

  std::uint64_t key_ = 0;
  std::mt19937_64 engine_;
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace simfair
