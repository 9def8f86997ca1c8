#include "ebgls/ebgls.hpp"

#include <algorithm>

namespace ebgls {

bool EliteState::contains(EdgeKey e) const {
  return std::binary_search(elite_edges.begin(), elite_edges.end(), e);
}

Rational utility_eb(bool in_solution, std::int64_t cost, std::int32_t penalty, bool in_elite,
                    const Rational& w) {
  const Rational base = utility(in_solution, cost, penalty);
  return in_elite ? base : base * w;
}

void refresh_elite(const SearchState& state, EliteState& elite, std::int64_t iteration,
                   std::int64_t period) {
  if (elite.initialized && iteration - elite.last_refresh_iteration < period) return;
  std::vector<EdgeKey> edges = edges_of(state.best.order);
  std::sort(edges.begin(), edges.end());
  elite.elite_edges = std::move(edges);
  elite.elite_cost = state.best.cost;
  elite.last_refresh_iteration = iteration;
  elite.initialized = true;
}

}  // namespace ebgls
