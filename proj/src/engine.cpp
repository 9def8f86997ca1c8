#include <chrono>
#include <cmath>
#include <optional>

#include "ebgls/ebgls.hpp"
#include "ebgls/gls.hpp"

namespace ebgls {

namespace {

using Clock = std::chrono::steady_clock;

struct EliteSchedule {
  Rational w{2, 1};
  Warmup warmup;
  std::int64_t period = 100;
};

struct Engine {
  const Instance& inst;
  const GlsConfig& cfg;
  const EliteSchedule* elite_schedule;  // null for plain GLS
  const SearchHooks* hooks;
  const EngineTweaks* tweaks;

  Clock::time_point started = Clock::now();

  double elapsed_seconds() const {
    return std::chrono::duration<double>(Clock::now() - started).count();
  }

  bool warmup_passed(std::int64_t completed_iterations) const {
    const Warmup& w = elite_schedule->warmup;
    if (w.kind == Warmup::Kind::kIterations) return completed_iterations >= w.iterations;
    const double budget = cfg.stop.max_seconds.value_or(0.0);
    return elapsed_seconds() >= w.fraction * budget;
  }

  std::int64_t found_at = -1;

  RunResult make_result(const SearchState& state, const char* reason) const {
    RunResult out;
    out.best_order = state.best.order;
    out.best_cost = state.best.cost;
    out.first_local_opt_cost = state.first_local_opt_cost;
    out.iterations = state.iteration;
    out.finish_iteration = found_at;
    out.seconds = elapsed_seconds();
    out.target_reached =
        cfg.stop.target_cost.has_value() && state.best.cost <= *cfg.stop.target_cost;
    out.stop_reason = reason;
    return out;
  }

  std::pair<RunResult, SearchState> run(EliteState* elite_out) {
    Rng rng(cfg.seed);
    Tour start = cfg.start == StartKind::kRandom ? random_tour(inst, rng)
                                                 : nearest_neighbor_tour(inst, 0);
    const std::int64_t start_cost = start.cost_g();
    SearchState state(inst, std::move(start));

    SearchDeadline deadline;
    deadline.best = &state.best;
    deadline.target_cost = cfg.stop.target_cost;
    if (cfg.stop.max_seconds.has_value())
      deadline.wall_deadline =
          started + std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double>(*cfg.stop.max_seconds));

    EliteState elite;

    const auto finish = [&](const char* reason) {
      RunResult r = make_result(state, reason);
      r.start_cost = start_cost;
      if (elite_out != nullptr) *elite_out = std::move(elite);
      return std::make_pair(std::move(r), std::move(state));
    };

    if (cfg.stop.zero_budget()) return finish("budget");
    if (deadline.target_hit()) {
      found_at = 0;
      return finish("target");
    }

    // Descent under plain g from the start tour; its local optimum fixes
    // lambda. Penalties are all zero here, so this equals the first
    // h-guided local search of the outer loop.
    state.bits.set_all();
    {
      LocalSearchParams p;
      p.inst = &inst;
      p.guide = GuideFunction{&inst, Rational{0, 1}, nullptr};
      p.tour = &state.current;
      p.bits = &state.bits;
      p.pen_sum = &state.pen_sum;
      p.best = &state.best;
      p.deadline = &deadline;
      p.scan_start = state.scan_cursor;
      const LocalSearchResult r = local_search_2opt_fls(p);
      state.scan_cursor = p.scan_start;
      if (r.stopped_early) {
        if (deadline.target_hit()) {
          found_at = 0;
          return finish("target");
        }
        return finish("time");
      }
    }
    state.first_local_opt_cost = state.current.cost_g();
    state.lambda = (tweaks != nullptr && tweaks->lambda_override.has_value())
                       ? *tweaks->lambda_override
                       : compute_lambda(state.first_local_opt_cost, inst.n(),
                                        cfg.lambda_coefficient);

    std::optional<JointMatrix> joint;
    if (JointMatrix::eligible(inst)) joint.emplace(inst, state.penalties);

    while (true) {
      if (deadline.target_hit()) {
        if (found_at < 0) found_at = state.iteration;
        break;
      }
      if (deadline.wall_expired()) return finish("time");
      if (cfg.stop.max_iterations.has_value() && state.iteration >= *cfg.stop.max_iterations)
        return finish("iterations");

      {
        LocalSearchParams p;
        p.inst = &inst;
        p.guide = GuideFunction{&inst, state.lambda, &state.penalties};
        p.tour = &state.current;
        p.bits = &state.bits;
        p.pen_sum = &state.pen_sum;
        p.best = &state.best;
        p.deadline = &deadline;
        p.joint = joint.has_value() ? &*joint : nullptr;
        p.scan_start = state.scan_cursor;
        const LocalSearchResult r = local_search_2opt_fls(p);
        state.scan_cursor = p.scan_start;
        if (r.stopped_early) {
          if (deadline.target_hit()) {
            found_at = state.iteration + 1;  // hit during this (uncounted) body
            break;
          }
          return finish("time");
        }
      }

      // Elite bookkeeping sits between the local search and penalization.
      const EliteState* elite_in_use = nullptr;
      if (elite_schedule != nullptr) {
        if (!elite.initialized) {
          if (warmup_passed(state.iteration))
            refresh_elite(state, elite, state.iteration, elite_schedule->period);
        } else {
          refresh_elite(state, elite, state.iteration, elite_schedule->period);
        }
        if (elite.initialized) elite_in_use = &elite;
      }

      if (tweaks == nullptr || !tweaks->disable_penalization) {
        std::vector<EdgeKey> penalized;
        if (elite_in_use != nullptr) {
          const Rational w = elite_schedule->w;
          penalized = penalize(state, state.current, inst,
                               [&](EdgeKey e, std::int64_t c, std::int32_t p) {
                                 return utility_eb(true, c, p, elite_in_use->contains(e), w);
                               });
        } else {
          penalized = penalize(state, state.current, inst,
                               [](EdgeKey, std::int64_t c, std::int32_t p) {
                                 return utility(true, c, p);
                               });
        }
        state.pen_sum += static_cast<std::int64_t>(penalized.size());
        activate_penalized(state.bits, penalized);
        if (joint.has_value())
          for (const EdgeKey& e : penalized) joint->refresh(e, state.penalties);
      }

      ++state.iteration;
      if (hooks != nullptr && hooks->on_iteration_end) hooks->on_iteration_end(state);
    }
    return finish("target");
  }
};

}  // namespace

GlsOutcome run_gls(const Instance& inst, const GlsConfig& cfg, const SearchHooks* hooks,
                   const EngineTweaks* tweaks) {
  Engine engine{inst, cfg, nullptr, hooks, tweaks};
  auto [result, state] = engine.run(nullptr);
  return GlsOutcome{std::move(result), std::move(state)};
}

EbglsOutcome run_ebgls(const Instance& inst, const EbglsConfig& cfg, const SearchHooks* hooks,
                       const EngineTweaks* tweaks) {
  if (compare(cfg.w, Rational{1, 1}) < 0)
    throw std::invalid_argument("run_ebgls: w must be at least 1");
  if (cfg.elite_update_period < 1)
    throw std::invalid_argument("run_ebgls: elite update period must be positive");
  if (cfg.warmup.kind == Warmup::Kind::kFractionOfTime && !cfg.base.stop.max_seconds.has_value())
    throw std::invalid_argument("run_ebgls: time-fraction warmup requires a time budget");
  EliteSchedule schedule{cfg.w, cfg.warmup, cfg.elite_update_period};
  Engine engine{inst, cfg.base, &schedule, hooks, tweaks};
  EliteState elite;
  auto [result, state] = engine.run(&elite);
  return EbglsOutcome{std::move(result), std::move(state), std::move(elite)};
}

}  // namespace ebgls
