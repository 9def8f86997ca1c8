#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ebgls {

/// Deterministic RNG wrapper. std::shuffle and the distribution classes are
/// implementation-defined, so all sampling goes through explicit, portable
/// routines on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Unbiased integer in [0, n) via rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Per-run seed for campaign cell (instance, pair index). The algorithm is
/// deliberately excluded so paired runs share their start tour.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view instance_name,
                                     int pair_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ fnv1a64(instance_name));
  h = mix64(h ^ static_cast<std::uint64_t>(pair_index));
  return h;
}

}  // namespace ebgls
