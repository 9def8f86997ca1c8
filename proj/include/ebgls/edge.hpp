#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace ebgls {

/// Canonical undirected edge: lo < hi always holds.
struct EdgeKey {
  std::int32_t lo = 0;
  std::int32_t hi = 0;

  friend bool operator==(const EdgeKey& a, const EdgeKey& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend bool operator!=(const EdgeKey& a, const EdgeKey& b) { return !(a == b); }
  friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  }
};

inline EdgeKey make_edge(std::int32_t a, std::int32_t b) {
  if (a == b) throw std::invalid_argument("make_edge: self loop");
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const {
    const std::uint64_t k =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.lo)) << 32) |
        static_cast<std::uint32_t>(e.hi);
    std::uint64_t x = k + 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

}  // namespace ebgls
