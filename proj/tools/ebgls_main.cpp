#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebgls/campaign.hpp"
#include "ebgls/ebgls.hpp"
#include "ebgls/gls.hpp"
#include "ebgls/landscape.hpp"
#include "ebgls/tsplib.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ebgls;

constexpr int kExitBudgetExhausted = 2;

std::optional<std::int64_t> lookup_optimum(const std::string& registry_path,
                                           const Instance& inst) {
  if (registry_path.empty()) return std::nullopt;
  if (!fs::exists(registry_path)) return std::nullopt;
  return OptimumRegistry::load(registry_path).lookup(inst.name());
}

int cmd_solve(const std::string& instance_path, const std::string& algo, std::uint64_t seed,
              std::optional<double> time_limit, std::optional<std::int64_t> max_iters,
              std::optional<std::int64_t> target_cost, const std::string& w,
              const std::string& lambda_coeff, const std::string& warmup_text,
              const std::string& start, const std::string& trace_path,
              const std::string& registry_path) {
  const Instance inst = load_tsplib_file(instance_path);
  std::optional<std::int64_t> optimum = lookup_optimum(registry_path, inst);

  GlsConfig cfg;
  cfg.lambda_coefficient = Rational::from_decimal(lambda_coeff);
  cfg.seed = seed;
  cfg.start = start == "nn" ? StartKind::kNearestNeighbor : StartKind::kRandom;
  cfg.stop.max_seconds = time_limit;
  cfg.stop.max_iterations = max_iters;
  cfg.stop.target_cost = target_cost.has_value() ? target_cost : optimum;
  if (!cfg.stop.max_seconds && !cfg.stop.max_iterations && !cfg.stop.target_cost)
    throw std::runtime_error(
        "no stopping criterion: give --time-limit or --max-iters (no optimum is registered "
        "for this instance)");

  std::ofstream trace;
  SearchHooks hooks;
  std::int64_t last_best = -1;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw std::runtime_error("cannot open trace output: " + trace_path);
    hooks.on_iteration_end = [&](const SearchState& state) {
      if (state.best.cost != last_best) {
        last_best = state.best.cost;
        trace << 0 << ',' << state.iteration << ',' << state.best.cost << ',';
        for (std::size_t k = 0; k < state.best.order.size(); ++k)
          trace << (k ? " " : "") << state.best.order[k];
        trace << '\n';
      }
    };
  }

  RunResult result;
  if (algo == "gls") {
    result = run_gls(inst, cfg, hooks.on_iteration_end ? &hooks : nullptr).result;
  } else {
    StopSpec stop_spec;
    if (max_iters.has_value()) {
      stop_spec.kind = StopSpec::Kind::kIterations;
      stop_spec.iterations = *max_iters;
    } else if (time_limit.has_value()) {
      stop_spec.kind = StopSpec::Kind::kTime;
      stop_spec.seconds = *time_limit;
    } else {
      // Target-only run: open-ended, so warm up in iteration terms.
      stop_spec.kind = StopSpec::Kind::kIterations;
    }
    EbglsConfig eb;
    eb.base = cfg;
    eb.w = Rational::from_decimal(w);
    WarmupSpec wspec = WarmupSpec::parse(warmup_text);
    eb.warmup = wspec.resolve(stop_spec, inst.n());
    if (eb.warmup.kind == Warmup::Kind::kFractionOfTime && !time_limit.has_value())
      eb.warmup = Warmup::none();
    result = run_ebgls(inst, eb, hooks.on_iteration_end ? &hooks : nullptr).result;
  }

  // Deterministic result fields on stdout; wall clock goes to stderr.
  std::cout << "instance=" << inst.name() << " algo=" << algo << " seed=" << seed
            << " start_cost=" << result.start_cost << " cost=" << result.best_cost;
  if (optimum.has_value()) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", excess_percent(result.best_cost, *optimum));
    std::cout << " optimum=" << *optimum << " excess=" << buf
              << " success=" << (result.best_cost <= *optimum ? 1 : 0);
  }
  std::cout << " iterations=" << result.iterations << " stop=" << result.stop_reason << "\n";
  std::cerr << "seconds=" << result.seconds << "\n";

  const std::optional<std::int64_t> goal = cfg.stop.target_cost;
  if (goal.has_value() && result.best_cost > *goal) return kExitBudgetExhausted;
  return 0;
}

int cmd_bench(const std::string& campaign_path, int workers_override) {
  CampaignConfig cfg = CampaignConfig::parse_file(campaign_path);
  if (workers_override > 0) cfg.workers = workers_override;
  fs::create_directories(cfg.output_dir);

  const CampaignOutcome outcome = run_campaign(cfg, std::cerr);

  const fs::path runs_path = fs::path(cfg.output_dir) / "runs.csv";
  const fs::path report_path = fs::path(cfg.output_dir) / "report.csv";
  {
    std::ofstream out(runs_path);
    write_runs_csv(out, cfg, outcome.records);
  }
  {
    std::ofstream out(report_path);
    write_report_csv(out, cfg, outcome.reports);
  }
  {
    std::ofstream out(fs::path(cfg.output_dir) / "campaign.fingerprint");
    out << cfg.fingerprint() << "\n";
  }
  std::cout << "wrote " << runs_path.string() << " and " << report_path.string() << "\n";
  return 0;
}

int cmd_landscape(const std::vector<std::string>& instance_paths, int runs,
                  const std::string& pool_path, const std::string& scatter_path,
                  const std::string& trajectory_path, const std::string& registry_path,
                  std::uint64_t seed, double time_cap, int workers) {
  for (const std::string& path : instance_paths) {
    const Instance inst = load_tsplib_file(path);
    const std::optional<std::int64_t> optimum = lookup_optimum(registry_path, inst);
    if (!optimum.has_value())
      throw std::runtime_error("landscape requires a registered optimum for " + inst.name());

    LandscapeParams params;
    params.runs_per_algorithm = runs;
    params.master_seed = seed;
    params.per_run_time_cap = time_cap;
    params.workers = workers;
    const LandscapeOutcome outcome = run_landscape(inst, *optimum, params, std::cerr);

    const auto with_suffix = [&](const std::string& base) {
      return instance_paths.size() == 1 ? base : base + "." + inst.name();
    };
    if (!pool_path.empty()) {
      std::ofstream out(with_suffix(pool_path));
      out << "# instance=" << inst.name() << " optimal_cost=" << outcome.pool.optimal_cost()
          << " count=" << outcome.pool.size() << "\n";
      for (const auto& member : outcome.pool.members()) {
        for (std::size_t k = 0; k < member.size(); ++k) out << (k ? " " : "") << member[k];
        out << "\n";
      }
    }
    if (!scatter_path.empty() && !outcome.pool.empty()) {
      std::ofstream out(with_suffix(scatter_path));
      write_scatter_csv(out, outcome.pool, outcome.corpus);
    }
    if (!trajectory_path.empty()) {
      std::ofstream out(with_suffix(trajectory_path));
      write_trajectory(out, outcome.corpus);
    }

    const BigValleyReport& report = outcome.report;
    std::cout << "instance=" << inst.name() << " runs=" << outcome.total_runs
              << " to_optimum=" << outcome.successful_runs
              << " distinct_optima=" << outcome.pool.size();
    if (report.evaluable) {
      char fdc_buf[32];
      std::snprintf(fdc_buf, sizeof(fdc_buf), "%.4f", report.fdc_value);
      std::cout << " fdc=" << fdc_buf << " mean_opt_dist=" << report.mean_opt_dist
                << " req1=" << (report.req1 ? "true" : "false")
                << " req2=" << (report.req2 ? "true" : "false")
                << " big_valley=" << (report.big_valley() ? "true" : "false");
    } else {
      std::cout << " big_valley=not-evaluable";
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_gen(int n, std::uint64_t seed, const std::string& out_path) {
  const GeneratedInstance g = generate_random_coordinates(n, seed);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  write_tsplib_euc2d(out, g.name, g.xs, g.ys);
  std::cout << "wrote " << out_path << " (" << n << " cities)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guided local search TSP solver and benchmark harness"};
  app.require_subcommand(1);

  // solve
  std::string instance_path, algo = "gls", w = "2", lambda_coeff = "0.3", warmup = "auto";
  std::string start = "random", trace_path, registry_path = "data/optima.txt";
  std::uint64_t seed = 1;
  std::optional<double> time_limit;
  std::optional<std::int64_t> max_iters, target_cost;
  CLI::App* solve = app.add_subcommand("solve", "run one seeded search on an instance");
  solve->add_option("--instance", instance_path, "TSPLIB instance file")->required();
  solve->add_option("--algo", algo, "gls | ebgls")->check(CLI::IsMember({"gls", "ebgls"}));
  solve->add_option("--seed", seed, "RNG seed");
  solve->add_option("--time-limit", time_limit, "wall-clock budget in seconds");
  solve->add_option("--max-iters", max_iters, "iteration budget");
  solve->add_option("--target-cost", target_cost, "stop when this cost is reached");
  solve->add_option("--w", w, "elite bias weight (ebgls)");
  solve->add_option("--lambda-coeff", lambda_coeff, "penalty weight coefficient");
  solve->add_option("--warmup", warmup, "auto | none | iters:<k> | time_fraction:<r>");
  solve->add_option("--start", start, "random | nn")->check(CLI::IsMember({"random", "nn"}));
  solve->add_option("--trace", trace_path, "write best-so-far trajectory to this file");
  solve->add_option("--optima", registry_path, "optimum registry file");

  // bench
  std::string campaign_path;
  int workers_override = 0;
  CLI::App* bench = app.add_subcommand("bench", "run a campaign from a config file");
  bench->add_option("--campaign", campaign_path, "campaign config file")->required();
  bench->add_option("--workers", workers_override, "worker count override");

  // landscape
  std::vector<std::string> landscape_instances;
  int landscape_runs = 20;
  std::string pool_path, scatter_path, trajectory_path;
  std::uint64_t landscape_seed = 1;
  double time_cap = 0.0;
  int landscape_workers = 0;
  std::string landscape_registry = "data/optima.txt";
  CLI::App* landscape =
      app.add_subcommand("landscape", "sample optima pools and fitness-distance data");
  landscape->add_option("--instances", landscape_instances, "TSPLIB instance files")->required();
  landscape->add_option("--runs", landscape_runs, "runs per algorithm");
  landscape->add_option("--pool", pool_path, "output file for the distinct optima pool");
  landscape->add_option("--scatter", scatter_path, "output CSV (distance, excess percent)");
  landscape->add_option("--trajectory", trajectory_path, "output trajectory corpus");
  landscape->add_option("--seed", landscape_seed, "master seed");
  landscape->add_option("--time-cap", time_cap, "per-run wall-clock cap in seconds (0: none)");
  landscape->add_option("--workers", landscape_workers, "worker count");
  landscape->add_option("--optima", landscape_registry, "optimum registry file");

  // gen
  int gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a uniform random EUC_2D instance");
  gen->add_option("--n", gen_n, "number of cities")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output TSPLIB file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(instance_path, algo, seed, time_limit, max_iters, target_cost, w,
                       lambda_coeff, warmup, start, trace_path, registry_path);
    if (bench->parsed()) return cmd_bench(campaign_path, workers_override);
    if (landscape->parsed())
      return cmd_landscape(landscape_instances, landscape_runs, pool_path, scatter_path,
                           trajectory_path, landscape_registry, landscape_seed, time_cap,
                           landscape_workers);
    if (gen->parsed()) return cmd_gen(gen_n, gen_seed, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
