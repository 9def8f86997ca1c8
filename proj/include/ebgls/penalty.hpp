#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ebgls/edge.hpp"

namespace ebgls {

/// Sparse map from undirected edge to its penalty count. Absent key means
/// penalty 0; counts only ever grow by 1 per penalization event. Backed by a
/// flat matrix for small instances (the lookup sits on the move-evaluation
/// hot path) and a hash map above that.
class PenaltyStore {
 public:
  static constexpr int kDenseLimit = 2048;

  explicit PenaltyStore(int n) : n_(n) {
    if (n_ <= kDenseLimit)
      dense_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  }

  std::int32_t get(EdgeKey e) const {
    if (!dense_.empty())
      return dense_[static_cast<std::size_t>(e.lo) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(e.hi)];
    const auto it = sparse_.find(e);
    return it == sparse_.end() ? 0 : it->second;
  }

  std::int32_t get(std::int32_t a, std::int32_t b) const {
    if (!dense_.empty()) {
      if (a > b) std::swap(a, b);
      return dense_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(b)];
    }
    return get(make_edge(a, b));
  }

  void increment(EdgeKey e) {
    if (!dense_.empty())
      ++dense_[static_cast<std::size_t>(e.lo) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(e.hi)];
    else
      ++sparse_[e];
    ++total_;
  }

  /// Sum of all penalty values, maintained incrementally.
  std::int64_t total() const { return total_; }

  int n() const { return n_; }

  /// Flat matrix backend when present, nullptr for the sparse map.
  const std::int32_t* dense_data() const { return dense_.empty() ? nullptr : dense_.data(); }

 private:
  int n_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<EdgeKey, std::int32_t, EdgeKeyHash> sparse_;
  std::int64_t total_ = 0;
};

}  // namespace ebgls
