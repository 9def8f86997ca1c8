#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ebgls/gls.hpp"

namespace ebgls {

/// Warm-up phase during which penalization ignores the elite solution.
struct Warmup {
  enum class Kind { kIterations, kFractionOfTime };
  Kind kind = Kind::kIterations;
  std::int64_t iterations = 10000;
  double fraction = 0.1;

  static Warmup by_iterations(std::int64_t count) {
    return Warmup{Kind::kIterations, count, 0.0};
  }
  static Warmup by_time_fraction(double ratio) { return Warmup{Kind::kFractionOfTime, 0, ratio}; }
  static Warmup none() { return by_iterations(0); }
};

struct EbglsConfig {
  GlsConfig base;
  Rational w{2, 1};  // utility multiplier for non-elite features, > 1
  Warmup warmup;
  std::int64_t elite_update_period = 100;  // in local-search executions
};

/// Edge set of the recorded elite solution (the historical best w.r.t. g).
struct EliteState {
  std::vector<EdgeKey> elite_edges;  // sorted, size n once initialized
  std::int64_t elite_cost = 0;
  std::int64_t last_refresh_iteration = -1;
  bool initialized = false;

  bool contains(EdgeKey e) const;
};

/// Elite-biased utility: features absent from the elite solution score a
/// factor w higher, making them more likely to be penalized.
Rational utility_eb(bool in_solution, std::int64_t cost, std::int32_t penalty, bool in_elite,
                    const Rational& w);

/// Copies the current best into the elite if at least `period` iterations
/// passed since the last refresh; otherwise leaves it unchanged.
void refresh_elite(const SearchState& state, EliteState& elite, std::int64_t iteration,
                   std::int64_t period);

struct EbglsOutcome {
  RunResult result;
  SearchState state;
  EliteState elite;
};

/// Elite-biased guided local search. Identical to run_gls during warm-up;
/// afterwards penalization consults the elite edge set via utility_eb and
/// the elite refreshes on its period.
EbglsOutcome run_ebgls(const Instance& inst, const EbglsConfig& cfg,
                       const SearchHooks* hooks = nullptr, const EngineTweaks* tweaks = nullptr);

}  // namespace ebgls
