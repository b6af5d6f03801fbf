#pragma once

#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>

namespace regspec {

// xoshiro256++ with splitmix64 seeding. Pinned here (rather than
// std::mt19937_64 + std:: distributions) so that sample streams are
// bit-identical across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& si : s_) si = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, n) without modulo bias
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal, Box-Muller (one value per call, no caching so the
  // stream position is a pure function of the call count)
  double next_normal() {
    for (;;) {
      double u = next_double();
      double v = next_double();
      if (u <= 0.0) continue;
      return std::sqrt(-2.0 * std::log1p(-u)) * std::cos(6.283185307179586477 * v);
    }
  }

  // Gamma(shape, 1), Marsaglia-Tsang
  double next_gamma(double shape) {
    if (shape < 1.0) {
      double u = next_double();
      while (u <= 0.0) u = next_double();
      return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = next_normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = next_double();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // chi_k distributed: sqrt of 2*Gamma(k/2)
  double next_chi(double k) { return std::sqrt(2.0 * next_gamma(0.5 * k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Deterministic stream derivation: seed for (root, trial, label) obtained by
// hashing the triple through FNV-1a and finishing with splitmix64. The scheme
// identifier below is recorded in run manifests.
inline constexpr std::string_view kSeedSchemeId = "fnv1a64+splitmix64/v1";

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t trial,
                                 std::string_view stream) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_byte = [&h](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix_byte(static_cast<std::uint8_t>(root >> (8 * i)));
  for (int i = 0; i < 8; ++i) mix_byte(static_cast<std::uint8_t>(trial >> (8 * i)));
  for (char c : stream) mix_byte(static_cast<std::uint8_t>(c));
  std::uint64_t x = h;
  return Rng::splitmix64(x);
}

}  // namespace regspec
