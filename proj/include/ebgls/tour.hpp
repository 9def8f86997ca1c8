#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ebgls/edge.hpp"
#include "ebgls/instance.hpp"
#include "ebgls/rng.hpp"

namespace ebgls {

/// Objective value of a cyclic order: sum of the n edge costs.
std::int64_t tour_cost(const Instance& inst, std::span<const std::int32_t> order);

/// Hamiltonian cycle with a position index and cached cost. The class keeps
/// the permutation invariant (position[order[k]] == k) through every 2-Opt
/// application.
class Tour {
 public:
  Tour(const Instance& inst, std::vector<std::int32_t> order);

  int n() const { return static_cast<int>(order_.size()); }
  std::span<const std::int32_t> order() const { return order_; }
  std::int64_t cost_g() const { return cost_; }

  std::int32_t city_at(int pos) const { return order_[static_cast<std::size_t>(pos)]; }
  std::int32_t position(std::int32_t city) const { return pos_[static_cast<std::size_t>(city)]; }

  std::int32_t succ(std::int32_t city) const {
    const std::size_t p = static_cast<std::size_t>(pos_[static_cast<std::size_t>(city)]) + 1;
    return order_[p == order_.size() ? 0 : p];
  }
  std::int32_t pred(std::int32_t city) const {
    const std::size_t p = static_cast<std::size_t>(pos_[static_cast<std::size_t>(city)]);
    return order_[p == 0 ? order_.size() - 1 : p - 1];
  }

  /// Applies the 2-Opt move that removes edges (a, succ a) and (b, succ b)
  /// and reconnects (a, b), (succ a, succ b). Reverses the shorter of the
  /// two segments. `delta_g` is trusted and added to the cached cost.
  void apply_two_opt(std::int32_t a, std::int32_t b, std::int64_t delta_g);

  /// Replaces the order wholesale (used to reseed searches).
  void assign(const Instance& inst, std::vector<std::int32_t> order);

 private:
  void rebuild_positions();

  std::vector<std::int32_t> order_;
  std::vector<std::int32_t> pos_;
  std::int64_t cost_ = 0;
};

/// The n undirected edges of the cycle, in tour order.
std::vector<EdgeKey> edges_of(std::span<const std::int32_t> order);
std::vector<EdgeKey> edges_of(const Tour& tour);

/// Uniformly random permutation.
Tour random_tour(const Instance& inst, Rng& rng);

/// Greedy construction: repeatedly append the closest unvisited city,
/// breaking ties by lowest index.
Tour nearest_neighbor_tour(const Instance& inst, int start_city = 0);

}  // namespace ebgls
