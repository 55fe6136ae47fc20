#pragma once

#include <cstdint>
#include <string_view>

namespace convfix {

// splitmix64. Hand-rolled so that seeded draws are byte-stable across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Modulo bias is irrelevant at desk scale.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

// FNV-1a, used both for seed derivation and for report digests.
inline std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = fnv1a(tag, seed ^ 0xcbf29ce484222325ULL);
  h ^= index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace convfix
