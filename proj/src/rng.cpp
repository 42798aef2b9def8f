#include "simfair/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace simfair {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::mt19937_64 make_engine(std::uint64_t key) {
  std::uint64_t s = key;
  const std::uint32_t words[8] = {
      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s) >> 32),
      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s) >> 32),
      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s) >> 32),
      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s) >> 32)};
  std::seed_seq seq(words, words + 8);
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::string_view label) {
  std::uint64_t s = seed;
  key_ = splitmix64(s);
  if (!label.empty()) {
    key_ ^= fnv1a64(label);
    std::uint64_t k = key_;
    key_ = splitmix64(k);
  }
  engine_ = make_engine(key_);
}

std::uint64_t RandomStream::raw() { return engine_(); }

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
  const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / n) * n;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

double RandomStream::gaussian() {
  if (have_cached_gaussian_) {
    have_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = radius * std::sin(angle);
  have_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

std::complex<double> RandomStream::complex_gaussian() {
  const double scale = std::numbers::sqrt2 / 2.0;
  const double re = gaussian();
  const double im = gaussian();
  return {re * scale, im * scale};
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  std::uint64_t s = key_ ^ (0xd6e8feb86659fd93ULL * (index + 1));
  RandomStream child;
  child.key_ = splitmix64(s);
  child.engine_ = make_engine(child.key_);
  return child;
}

std::string RandomStream::serialize() const {
  std::ostringstream out;
  out << key_ << ' ' << engine_ << ' ' << (have_cached_gaussian_ ? 1 : 0);
  if (have_cached_gaussian_) {
    out << ' ';
    out.precision(17);
    out << cached_gaussian_;
  }
  return out.str();
}

RandomStream RandomStream::deserialize(const std::string& state) {
  RandomStream stream;
  std::istringstream in(state);
  int cached = 0;
  in >> stream.key_ >> stream.engine_ >> cached;
  if (!in) throw std::invalid_argument("RandomStream::deserialize: malformed state");
  stream.have_cached_gaussian_ = cached != 0;
  if (stream.have_cached_gaussian_) {
    in >> stream.cached_gaussian_;
    if (!in) throw std::invalid_argument("RandomStream::deserialize: malformed state");
  }
  return stream;
}

}  // namespace simfair
