#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ebgls/local_search.hpp"
#include "ebgls/penalty.hpp"
#include "ebgls/rational.hpp"
#include "ebgls/tour.hpp"

namespace ebgls {

/// Stopping criterion: whichever of the configured limits is hit first.
struct StopCondition {
  std::optional<std::int64_t> max_iterations;
  std::optional<double> max_seconds;
  std::optional<std::int64_t> target_cost;

  bool zero_budget() const {
    return (max_iterations.has_value() && *max_iterations <= 0) ||
           (max_seconds.has_value() && *max_seconds <= 0.0);
  }
};

enum class StartKind { kRandom, kNearestNeighbor };

struct GlsConfig {
  Rational lambda_coefficient{3, 10};
  StopCondition stop;
  std::uint64_t seed = 1;
  StartKind start = StartKind::kRandom;
};

/// Mutable state of one run. Owned exclusively by that run; the instance it
/// searches is shared read-only.
struct SearchState {
  SearchState(const Instance& inst, Tour start)
      : current(std::move(start)), penalties(inst.n()), bits(inst.n()) {
    best.reset(current);
  }

  Tour current;
  BestTracker best;  // best found so far with respect to g
  PenaltyStore penalties;
  Rational lambda{0, 1};
  std::int64_t iteration = 0;  // completed outer iterations
  std::int64_t pen_sum = 0;    // penalty count over the current tour's edges
  std::int64_t first_local_opt_cost = 0;
  ActivationBits bits;
  int scan_cursor = 0;
};

struct SearchHooks {
  /// Called after each completed outer iteration (local search + penalize).
  std::function<void(const SearchState&)> on_iteration_end;
};

/// Test-only knobs. Production entry points never set these.
struct EngineTweaks {
  bool disable_penalization = false;
  std::optional<Rational> lambda_override;
};

struct RunResult {
  std::vector<std::int32_t> best_order;
  std::int64_t best_cost = 0;
  std::int64_t start_cost = 0;
  std::int64_t first_local_opt_cost = 0;
  std::int64_t iterations = 0;
  // Outer iteration during which the target cost was first reached
  // (0: before the loop), -1 when it never was.
  std::int64_t finish_iteration = -1;
  double seconds = 0.0;  // measured wall clock, diagnostic only
  bool target_reached = false;
  std::string stop_reason;  // "target" | "iterations" | "time" | "budget"
};

/// Penalty weight of Eq-style lambda = coeff * first_local_opt_cost / n,
/// kept as an exact rational.
Rational compute_lambda(std::int64_t first_local_opt_cost, int n, const Rational& coeff);

/// Feature utility: cost / (1 + penalty) for features of the solution,
/// zero otherwise.
Rational utility(bool in_solution, std::int64_t cost, std::int32_t penalty);

/// Increments the penalty of every maximum-utility edge of `local_opt`
/// (all ties penalized) and returns the penalized set. `util` maps
/// (edge, edge cost, current penalty) to the selection score of an edge
/// known to be in the solution.
template <typename UtilFn>
std::vector<EdgeKey> penalize(SearchState& state, const Tour& local_opt, const Instance& inst,
                              UtilFn&& util) {
  std::vector<EdgeKey> winners;
  Rational best_util{0, 1};
  const auto order = local_opt.order();
  const int n = local_opt.n();
  for (int k = 0; k < n; ++k) {
    const EdgeKey e = make_edge(order[static_cast<std::size_t>(k)],
                                order[static_cast<std::size_t>(k + 1 == n ? 0 : k + 1)]);
    const Rational u = util(e, inst.edge_cost(e), state.penalties.get(e));
    const int cmp_result = compare(u, best_util);
    if (cmp_result > 0) {
      best_util = u;
      winners.clear();
      winners.push_back(e);
    } else if (cmp_result == 0 && !winners.empty()) {
      winners.push_back(e);
    }
  }
  for (const EdgeKey& e : winners) state.penalties.increment(e);
  return winners;
}

struct GlsOutcome {
  RunResult result;
  SearchState state;
};

/// Guided local search (2-Opt with fast local search under the augmented
/// objective). The start tour descends under plain g first; that local
/// optimum sets lambda; each outer iteration then runs a local search on h
/// and penalizes the maximum-utility edges of the resulting optimum.
GlsOutcome run_gls(const Instance& inst, const GlsConfig& cfg, const SearchHooks* hooks = nullptr,
                   const EngineTweaks* tweaks = nullptr);

}  // namespace ebgls
