#include "ebgls/tour.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ebgls {

std::int64_t tour_cost(const Instance& inst, std::span<const std::int32_t> order) {
  const std::size_t n = order.size();
  std::int64_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = k + 1 == n ? 0 : k + 1;
    total += inst.distance(order[k], order[next]);
  }
  return total;
}

Tour::Tour(const Instance& inst, std::vector<std::int32_t> order) {
  assign(inst, std::move(order));
}

void Tour::assign(const Instance& inst, std::vector<std::int32_t> order) {
  if (static_cast<int>(order.size()) != inst.n())
    throw std::invalid_argument("Tour: order size does not match instance");
  order_ = std::move(order);
  rebuild_positions();
  cost_ = tour_cost(inst, order_);
}

void Tour::rebuild_positions() {
  const int n = static_cast<int>(order_.size());
  pos_.assign(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    const std::int32_t city = order_[static_cast<std::size_t>(k)];
    if (city < 0 || city >= n || pos_[static_cast<std::size_t>(city)] != -1)
      throw std::invalid_argument("Tour: order is not a permutation");
    pos_[static_cast<std::size_t>(city)] = k;
  }
}

void Tour::apply_two_opt(std::int32_t a, std::int32_t b, std::int64_t delta_g) {
  const int n = static_cast<int>(order_.size());
  int i = pos_[static_cast<std::size_t>(a)];
  int j = pos_[static_cast<std::size_t>(b)];
  // Segment succ(a)..b has length inner; the complementary segment
  // succ(b)..a is reversed instead when it is shorter. Both reconnect the
  // tour with edges (a,b) and (succ a, succ b).
  int inner = j - i;
  if (inner < 0) inner += n;
  if (inner <= n - inner) {
    int lo = i + 1;
    int hi = j;
    for (int steps = inner / 2; steps > 0; --steps) {
      const int li = lo >= n ? lo - n : lo;
      const int hj = hi < 0 ? hi + n : hi;
      std::swap(order_[static_cast<std::size_t>(li)], order_[static_cast<std::size_t>(hj)]);
      pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(li)])] = li;
      pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(hj)])] = hj;
      ++lo;
      --hi;
    }
  } else {
    int lo = j + 1;
    int hi = i + n;
    for (int steps = (n - inner) / 2; steps > 0; --steps) {
      const int li = lo >= n ? lo - n : lo;
      const int hj = hi >= n ? hi - n : hi;
      std::swap(order_[static_cast<std::size_t>(li)], order_[static_cast<std::size_t>(hj)]);
      pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(li)])] = li;
      pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(hj)])] = hj;
      ++lo;
      --hi;
    }
  }
  cost_ += delta_g;
}

std::vector<EdgeKey> edges_of(std::span<const std::int32_t> order) {
  const std::size_t n = order.size();
  std::vector<EdgeKey> edges;
  edges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = k + 1 == n ? 0 : k + 1;
    edges.push_back(make_edge(order[k], order[next]));
  }
  return edges;
}

std::vector<EdgeKey> edges_of(const Tour& tour) { return edges_of(tour.order()); }

Tour random_tour(const Instance& inst, Rng& rng) {
  std::vector<std::int32_t> order(static_cast<std::size_t>(inst.n()));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  return Tour(inst, std::move(order));
}

Tour nearest_neighbor_tour(const Instance& inst, int start_city) {
  const int n = inst.n();
  if (start_city < 0 || start_city >= n)
    throw std::invalid_argument("nearest_neighbor_tour: bad start city");
  std::vector<std::int32_t> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  order.push_back(start_city);
  visited[static_cast<std::size_t>(start_city)] = true;
  for (int step = 1; step < n; ++step) {
    const std::int32_t current = order.back();
    std::int32_t best = -1;
    std::int32_t best_dist = 0;
    for (std::int32_t c = 0; c < n; ++c) {
      if (visited[static_cast<std::size_t>(c)]) continue;
      const std::int32_t d = inst.distance(current, c);
      if (best == -1 || d < best_dist) {
        best = c;
        best_dist = d;
      }
    }
    order.push_back(best);
    visited[static_cast<std::size_t>(best)] = true;
  }
  return Tour(inst, std::move(order));
}

}  // namespace ebgls
