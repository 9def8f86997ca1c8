#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ebgls/guide.hpp"
#include "ebgls/tour.hpp"

namespace ebgls {

/// Per-city activation bits of the Fast Local Search scheme. The scan only
/// visits active cities; the search terminates when no bit is set.
class ActivationBits {
 public:
  explicit ActivationBits(int n) : bits_(static_cast<std::size_t>(n), 0) {}

  bool test(std::int32_t c) const { return bits_[static_cast<std::size_t>(c)] != 0; }
  void set(std::int32_t c) {
    if (!bits_[static_cast<std::size_t>(c)]) {
      bits_[static_cast<std::size_t>(c)] = 1;
      ++active_;
    }
  }
  void clear(std::int32_t c) {
    if (bits_[static_cast<std::size_t>(c)]) {
      bits_[static_cast<std::size_t>(c)] = 0;
      --active_;
    }
  }
  void set_all() {
    std::fill(bits_.begin(), bits_.end(), 1);
    active_ = static_cast<int>(bits_.size());
  }
  int active_count() const { return active_; }
  int size() const { return static_cast<int>(bits_.size()); }

 private:
  std::vector<std::uint8_t> bits_;
  int active_ = 0;
};

/// Sets the activation bits of the endpoint cities of each edge.
void activate_penalized(ActivationBits& bits, std::span<const EdgeKey> penalized_edges);

/// A 2-Opt move identified by the tour positions of its two removed edges:
/// edge (order[pos_a], order[pos_a+1]) and edge (order[pos_b], order[pos_b+1]).
struct TwoOptMove {
  int pos_a = 0;
  int pos_b = 0;
};

struct MoveDelta {
  std::int64_t delta_g = 0;
  std::int64_t delta_p = 0;  // penalty-count change of the tour's edge set
  double delta_h = 0.0;
};

/// Exact cost and guide deltas of a candidate move. Throws on degenerate
/// moves (the two removed edges must not share an endpoint).
MoveDelta move_delta(const Instance& inst, const Tour& tour, TwoOptMove move,
                     const GuideFunction& guide);

/// Mirror of (distance, penalty) per city pair packed into one 64-bit word,
/// so the scan loads both with a single cache access. Kept in sync by
/// patching the penalized edges after each penalization event.
class JointMatrix {
 public:
  static bool eligible(const Instance& inst) {
    return inst.matrix_data() != nullptr && inst.n() <= PenaltyStore::kDenseLimit;
  }

  JointMatrix(const Instance& inst, const PenaltyStore& penalties);

  void refresh(EdgeKey e, const PenaltyStore& penalties);

  std::uint64_t load(std::int32_t a, std::int32_t b) const {
    return cells_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
  }
  static std::int32_t dist_of(std::uint64_t cell) { return static_cast<std::int32_t>(cell); }
  static std::int32_t pen_of(std::uint64_t cell) {
    return static_cast<std::int32_t>(cell >> 32);
  }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> cells_;
};

/// Best-so-far tour with respect to g, updated after every applied move.
struct BestTracker {
  std::vector<std::int32_t> order;
  std::int64_t cost = 0;
  std::function<void(std::int64_t cost, std::span<const std::int32_t> order)> on_improve;

  void reset(const Tour& tour) {
    order.assign(tour.order().begin(), tour.order().end());
    cost = tour.cost_g();
  }

  void offer(const Tour& tour) {
    if (tour.cost_g() < cost) {
      order.assign(tour.order().begin(), tour.order().end());
      cost = tour.cost_g();
      if (on_improve) on_improve(cost, order);
    }
  }
};

/// Stop probe shared by the outer loop and the local search. Wall-clock is
/// only consulted once per city scan; the target test is a plain integer
/// comparison against the best tracker.
struct SearchDeadline {
  std::optional<std::chrono::steady_clock::time_point> wall_deadline;
  std::optional<std::int64_t> target_cost;
  const BestTracker* best = nullptr;

  bool target_hit() const {
    return target_cost.has_value() && best != nullptr && best->cost <= *target_cost;
  }
  bool wall_expired() const {
    return wall_deadline.has_value() && std::chrono::steady_clock::now() >= *wall_deadline;
  }
};

struct LocalSearchResult {
  std::int64_t applied_moves = 0;
  bool stopped_early = false;  // deadline or target interrupted the descent
};

struct LocalSearchParams {
  const Instance* inst = nullptr;
  GuideFunction guide;
  Tour* tour = nullptr;
  ActivationBits* bits = nullptr;
  std::int64_t* pen_sum = nullptr;    // maintained only when guide.penalties is set
  BestTracker* best = nullptr;        // optional
  SearchDeadline* deadline = nullptr; // optional
  const JointMatrix* joint = nullptr; // optional fast path, mirrors guide state
  int scan_start = 0;
};

/// First-improvement 2-Opt descent over the candidate neighborhoods,
/// restricted by the activation bits. On normal return every bit is false
/// and the tour admits no improving candidate move under h. Applied moves
/// re-activate their four endpoint cities.
LocalSearchResult local_search_2opt_fls(LocalSearchParams& params);

}  // namespace ebgls
