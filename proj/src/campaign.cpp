#include "ebgls/campaign.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ebgls {

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim_copy(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::string format_p_value(const UTestResult& t, bool tested) {
  if (!tested || !t.applicable) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", t.p_two_sided);
  return buf;
}

}  // namespace

StopSpec StopSpec::parse(const std::string& text) {
  StopSpec spec;
  if (text == "auto") {
    spec.kind = Kind::kAuto;
    return spec;
  }
  if (text.rfind("time:", 0) == 0) {
    spec.kind = Kind::kTime;
    spec.seconds = std::stod(text.substr(5));
    return spec;
  }
  if (text.rfind("iters:", 0) == 0) {
    spec.kind = Kind::kIterations;
    spec.iterations = std::stoll(text.substr(6));
    return spec;
  }
  throw std::invalid_argument("stop spec must be auto, time:<sec> or iters:<count>: " + text);
}

std::string StopSpec::to_string() const {
  switch (kind) {
    case Kind::kAuto: return "auto";
    case Kind::kTime: return "time:" + format_double(seconds, 3);
    case Kind::kIterations: return "iters:" + std::to_string(iterations);
  }
  return "auto";
}

double StopSpec::budget_seconds(int n) const {
  if (kind == Kind::kTime) return seconds;
  return std::ceil(static_cast<double>(n) / 10.0);
}

WarmupSpec WarmupSpec::parse(const std::string& text) {
  WarmupSpec spec;
  if (text == "auto") {
    spec.kind = Kind::kAuto;
    return spec;
  }
  if (text == "none") {
    spec.kind = Kind::kIterations;
    spec.iterations = 0;
    return spec;
  }
  if (text.rfind("iters:", 0) == 0) {
    spec.kind = Kind::kIterations;
    spec.iterations = std::stoll(text.substr(6));
    return spec;
  }
  if (text.rfind("time_fraction:", 0) == 0) {
    spec.kind = Kind::kTimeFraction;
    spec.fraction = std::stod(text.substr(14));
    return spec;
  }
  throw std::invalid_argument(
      "warmup spec must be auto, none, iters:<count> or time_fraction:<ratio>: " + text);
}

std::string WarmupSpec::to_string() const {
  switch (kind) {
    case Kind::kAuto: return "auto";
    case Kind::kIterations: return "iters:" + std::to_string(iterations);
    case Kind::kTimeFraction: return "time_fraction:" + format_double(fraction, 4);
  }
  return "auto";
}

Warmup WarmupSpec::resolve(const StopSpec& stop, int n) const {
  switch (kind) {
    case Kind::kIterations:
      return Warmup::by_iterations(iterations);
    case Kind::kTimeFraction:
      return Warmup::by_time_fraction(fraction);
    case Kind::kAuto:
      break;
  }
  if (stop.time_based()) {
    return n >= 1000 ? Warmup::by_time_fraction(0.1) : Warmup::none();
  }
  return Warmup::by_iterations(10000);
}

CampaignConfig CampaignConfig::parse(std::istream& in) {
  CampaignConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim_copy(line);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("campaign config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim_copy(line.substr(0, eq));
    const std::string value = trim_copy(line.substr(eq + 1));
    if (key == "instances")
      cfg.instances = split_list(value);
    else if (key == "algorithms")
      cfg.algorithms = split_list(value);
    else if (key == "runs")
      cfg.runs = std::stoi(value);
    else if (key == "stop")
      cfg.stop = StopSpec::parse(value);
    else if (key == "master_seed")
      cfg.master_seed = std::stoull(value);
    else if (key == "output")
      cfg.output_dir = value;
    else if (key == "optima")
      cfg.optima_path = value;
    else if (key == "lambda_coeff")
      cfg.lambda_coeff = value;
    else if (key == "w")
      cfg.w = value;
    else if (key == "warmup")
      cfg.warmup = WarmupSpec::parse(value);
    else if (key == "elite_period")
      cfg.elite_period = std::stoll(value);
    else if (key == "start")
      cfg.start = value;
    else if (key == "workers")
      cfg.workers = std::stoi(value);
    else
      throw std::invalid_argument("campaign config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

CampaignConfig CampaignConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open campaign config: " + path.string());
  return parse(in);
}

void CampaignConfig::validate() const {
  if (instances.empty()) throw std::invalid_argument("campaign: no instances");
  if (algorithms.empty()) throw std::invalid_argument("campaign: no algorithms");
  for (const std::string& a : algorithms)
    if (a != "gls" && a != "ebgls")
      throw std::invalid_argument("campaign: unknown algorithm '" + a + "'");
  if (runs < 1) throw std::invalid_argument("campaign: runs must be positive");
  if (start != "random" && start != "nn")
    throw std::invalid_argument("campaign: start must be random or nn");
  if (compare(Rational::from_decimal(lambda_coeff), Rational{0, 1}) <= 0)
    throw std::invalid_argument("campaign: lambda_coeff must be positive");
  if (compare(Rational::from_decimal(w), Rational{1, 1}) <= 0)
    throw std::invalid_argument("campaign: w must be greater than 1");
  if (elite_period < 1) throw std::invalid_argument("campaign: elite_period must be positive");
}

StartKind CampaignConfig::start_kind() const {
  return start == "nn" ? StartKind::kNearestNeighbor : StartKind::kRandom;
}

std::string CampaignConfig::canonical_text() const {
  std::ostringstream out;
  out << "algorithms=";
  for (std::size_t i = 0; i < algorithms.size(); ++i)
    out << (i ? "," : "") << algorithms[i];
  out << "\nelite_period=" << elite_period;
  out << "\ninstances=";
  for (std::size_t i = 0; i < instances.size(); ++i)
    out << (i ? "," : "") << instances[i];
  out << "\nlambda_coeff=" << lambda_coeff;
  out << "\nmaster_seed=" << master_seed;
  out << "\noptima=" << optima_path;
  out << "\nruns=" << runs;
  out << "\nstart=" << start;
  out << "\nstop=" << stop.to_string();
  out << "\nw=" << w;
  out << "\nwarmup=" << warmup.to_string();
  out << "\n";
  return out.str();
}

std::string CampaignConfig::fingerprint() const {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_text())));
  return buf;
}

int resolve_worker_count(int configured) {
  if (const char* env = std::getenv("EBGLS_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

void parallel_cells(int workers, int cell_count, const std::function<void(int)>& body) {
  if (workers <= 1 || cell_count <= 1) {
    for (int i = 0; i < cell_count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int count = std::min(workers, cell_count);
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const int cell = next.fetch_add(1);
        if (cell >= cell_count) return;
        body(cell);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

struct PreparedInstance {
  std::string path;
  std::unique_ptr<Instance> instance;
  std::optional<std::int64_t> optimum;
};

}  // namespace

CampaignOutcome run_campaign(const CampaignConfig& cfg, std::ostream& log) {
  cfg.validate();
  OptimumRegistry registry;
  if (!cfg.optima_path.empty()) registry = OptimumRegistry::load(cfg.optima_path);

  std::vector<PreparedInstance> prepared;
  prepared.reserve(cfg.instances.size());
  for (const std::string& path : cfg.instances) {
    PreparedInstance p;
    p.path = path;
    p.instance = std::make_unique<Instance>(load_tsplib_file(path));
    p.optimum = registry.lookup(p.instance->name());
    if (!p.optimum.has_value())
      log << "warning: no registered optimum for " << p.instance->name()
          << "; success and excess columns disabled\n";
    prepared.push_back(std::move(p));
  }

  const int algos = static_cast<int>(cfg.algorithms.size());
  const int cells_per_instance = algos * cfg.runs;
  const int cell_count = static_cast<int>(prepared.size()) * cells_per_instance;
  std::vector<RunRecord> records(static_cast<std::size_t>(cell_count));

  const Rational lambda_coeff = Rational::from_decimal(cfg.lambda_coeff);
  const Rational w = Rational::from_decimal(cfg.w);

  const auto run_cell = [&](int cell) {
    const int instance_idx = cell / cells_per_instance;
    const int rem = cell % cells_per_instance;
    const int algo_idx = rem / cfg.runs;
    const int pair = rem % cfg.runs;

    const PreparedInstance& p = prepared[static_cast<std::size_t>(instance_idx)];
    const Instance& inst = *p.instance;
    const std::string& algo = cfg.algorithms[static_cast<std::size_t>(algo_idx)];

    GlsConfig gls_cfg;
    gls_cfg.lambda_coefficient = lambda_coeff;
    gls_cfg.seed = derive_run_seed(cfg.master_seed, inst.name(), pair);
    gls_cfg.start = cfg.start_kind();
    if (cfg.stop.kind == StopSpec::Kind::kIterations)
      gls_cfg.stop.max_iterations = cfg.stop.iterations;
    else
      gls_cfg.stop.max_seconds = cfg.stop.budget_seconds(inst.n());
    if (p.optimum.has_value()) gls_cfg.stop.target_cost = *p.optimum;

    RunResult result;
    if (algo == "gls") {
      result = run_gls(inst, gls_cfg).result;
    } else {
      EbglsConfig eb;
      eb.base = gls_cfg;
      eb.w = w;
      eb.warmup = cfg.warmup.resolve(cfg.stop, inst.n());
      eb.elite_update_period = cfg.elite_period;
      result = run_ebgls(inst, eb).result;
    }

    RunRecord rec;
    rec.instance = inst.name();
    rec.algorithm = algo;
    rec.pair_index = pair;
    rec.seed = gls_cfg.seed;
    rec.start_cost = result.start_cost;
    rec.best_cost = result.best_cost;
    rec.iterations = result.iterations;
    rec.stop_reason = result.stop_reason;
    if (p.optimum.has_value()) {
      rec.success = result.best_cost <= *p.optimum ? 1 : 0;
      rec.excess = excess_percent(result.best_cost, *p.optimum);
    }
    if (cfg.stop.time_based() && result.stop_reason == "time") {
      // Budget-exhausted runs are accounted at the full limit.
      rec.seconds = cfg.stop.budget_seconds(inst.n());
      rec.seconds_is_exact_budget = true;
    } else {
      rec.seconds = result.seconds;
    }
    records[static_cast<std::size_t>(cell)] = std::move(rec);
  };

  parallel_cells(resolve_worker_count(cfg.workers), cell_count, run_cell);

  CampaignOutcome outcome;
  outcome.records = std::move(records);

  for (std::size_t i = 0; i < prepared.size(); ++i) {
    const PreparedInstance& p = prepared[i];
    InstanceReport report;
    report.instance = p.instance->name();
    report.n = p.instance->n();
    report.max_runtime = cfg.stop.time_based() ? cfg.stop.budget_seconds(p.instance->n()) : 0.0;
    report.optimum_known = p.optimum.has_value();

    std::vector<std::vector<double>> excess_samples(static_cast<std::size_t>(algos));
    std::vector<std::vector<double>> runtime_samples(static_cast<std::size_t>(algos));
    report.success.assign(static_cast<std::size_t>(algos), 0);
    report.mean_excess.assign(static_cast<std::size_t>(algos), 0.0);
    report.mean_runtime.assign(static_cast<std::size_t>(algos), 0.0);

    for (int a = 0; a < algos; ++a) {
      for (int k = 0; k < cfg.runs; ++k) {
        const std::size_t cell = i * static_cast<std::size_t>(cells_per_instance) +
                                 static_cast<std::size_t>(a) * static_cast<std::size_t>(cfg.runs) +
                                 static_cast<std::size_t>(k);
        const RunRecord& rec = outcome.records[cell];
        if (rec.success == 1) ++report.success[static_cast<std::size_t>(a)];
        if (report.optimum_known)
          excess_samples[static_cast<std::size_t>(a)].push_back(rec.excess);
        runtime_samples[static_cast<std::size_t>(a)].push_back(rec.seconds);
      }
      const auto mean = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double s = 0.0;
        for (const double x : v) s += x;
        return s / static_cast<double>(v.size());
      };
      report.mean_excess[static_cast<std::size_t>(a)] =
          excess_samples[static_cast<std::size_t>(a)].empty()
              ? 0.0
              : mean(excess_samples[static_cast<std::size_t>(a)]);
      report.mean_runtime[static_cast<std::size_t>(a)] =
          mean(runtime_samples[static_cast<std::size_t>(a)]);
    }

    if (algos == 2) {
      if (report.optimum_known) {
        report.excess_test = mann_whitney_u(excess_samples[0], excess_samples[1]);
        report.excess_tested = true;
      }
      if (cfg.stop.time_based()) {
        report.runtime_test = mann_whitney_u(runtime_samples[0], runtime_samples[1]);
        report.runtime_tested = true;
      }

      // Dominance of algorithms[0] (A) over algorithms[1] (B): negative
      // direction favors A.
      MetricComparison success_cmp = MetricComparison::neutral();
      if (report.optimum_known) {
        success_cmp.direction = report.success[0] > report.success[1]   ? -1
                                : report.success[0] < report.success[1] ? 1
                                                                        : 0;
        success_cmp.significant = success_cmp.direction != 0;
      }
      MetricComparison excess_cmp = MetricComparison::neutral();
      if (report.excess_tested && report.excess_test.applicable) {
        excess_cmp.direction = report.mean_excess[0] < report.mean_excess[1]   ? -1
                               : report.mean_excess[0] > report.mean_excess[1] ? 1
                                                                               : 0;
        excess_cmp.significant = report.excess_test.p_two_sided < 0.05;
      }
      MetricComparison runtime_cmp = MetricComparison::neutral();
      if (report.runtime_tested && report.runtime_test.applicable) {
        runtime_cmp.direction = report.mean_runtime[0] < report.mean_runtime[1]   ? -1
                                : report.mean_runtime[0] > report.mean_runtime[1] ? 1
                                                                                  : 0;
        runtime_cmp.significant = report.runtime_test.p_two_sided < 0.05;
      }
      switch (dominance_verdict(success_cmp, excess_cmp, runtime_cmp)) {
        case Dominance::kAWins: report.verdict = cfg.algorithms[0]; break;
        case Dominance::kBWins: report.verdict = cfg.algorithms[1]; break;
        case Dominance::kIncomparable: report.verdict = "incomparable"; break;
      }
    }
    outcome.reports.push_back(std::move(report));
  }
  return outcome;
}

void write_runs_csv(std::ostream& out, const CampaignConfig& cfg,
                    const std::vector<RunRecord>& records) {
  out << "# fingerprint=" << cfg.fingerprint() << "\n";
  out << "instance,algorithm,pair,seed,start_cost,best_cost,iterations,success,excess,"
         "runtime_seconds,stop_reason\n";
  const bool deterministic_time = !cfg.stop.time_based();
  for (const RunRecord& r : records) {
    out << r.instance << ',' << r.algorithm << ',' << r.pair_index << ',' << r.seed << ','
        << r.start_cost << ',' << r.best_cost << ',' << r.iterations << ',';
    if (r.success < 0)
      out << '-';
    else
      out << r.success;
    out << ',';
    if (r.excess < 0.0)
      out << '-';
    else
      out << format_double(r.excess, 4);
    out << ',';
    // Wall clock is not reproducible; iteration-budget campaigns keep the
    // result CSV byte-deterministic by omitting it.
    if (deterministic_time)
      out << '-';
    else
      out << format_double(r.seconds, r.seconds_is_exact_budget ? 0 : 4);
    out << ',' << r.stop_reason << '\n';
  }
}

void write_report_csv(std::ostream& out, const CampaignConfig& cfg,
                      const std::vector<InstanceReport>& reports) {
  out << "# fingerprint=" << cfg.fingerprint() << "\n";
  out << "instance,max_runtime";
  for (const std::string& a : cfg.algorithms) out << ",success_" << a;
  for (const std::string& a : cfg.algorithms) out << ",excess_" << a;
  out << ",excess_p";
  for (const std::string& a : cfg.algorithms) out << ",runtime_" << a;
  out << ",runtime_p,verdict\n";

  const bool time_based = cfg.stop.time_based();
  for (const InstanceReport& r : reports) {
    out << r.instance << ',';
    if (time_based)
      out << format_double(r.max_runtime, 0);
    else
      out << '-';
    for (std::size_t a = 0; a < r.success.size(); ++a) {
      out << ',';
      if (r.optimum_known)
        out << r.success[a];
      else
        out << '-';
    }
    for (std::size_t a = 0; a < r.mean_excess.size(); ++a) {
      out << ',';
      if (r.optimum_known)
        out << format_double(r.mean_excess[a], 4);
      else
        out << '-';
    }
    out << ',' << format_p_value(r.excess_test, r.excess_tested);
    for (std::size_t a = 0; a < r.mean_runtime.size(); ++a) {
      out << ',';
      if (time_based)
        out << format_double(r.mean_runtime[a], 2);
      else
        out << '-';
    }
    out << ',' << format_p_value(r.runtime_test, r.runtime_tested);
    out << ',' << (r.verdict.empty() ? "-" : r.verdict) << '\n';
  }
}

LandscapeOutcome run_landscape(const Instance& inst, std::int64_t optimum,
                               const LandscapeParams& params, std::ostream& log) {
  const int per_algo = params.runs_per_algorithm;
  const int total = per_algo * 2;
  const Rational lambda_coeff = Rational::from_decimal(params.lambda_coeff);
  const Rational w = Rational::from_decimal(params.w);

  struct RunCapture {
    std::vector<TrajectorySample> samples;
    std::vector<std::int32_t> final_order;
    std::int64_t final_cost = 0;
    bool success = false;
  };
  std::vector<RunCapture> captures(static_cast<std::size_t>(total));

  const auto run_cell = [&](int cell) {
    const int algo_idx = cell / per_algo;  // 0: gls, 1: ebgls
    const int pair = cell % per_algo;
    RunCapture& capture = captures[static_cast<std::size_t>(cell)];

    GlsConfig gls_cfg;
    gls_cfg.lambda_coefficient = lambda_coeff;
    gls_cfg.seed = derive_run_seed(params.master_seed, inst.name(), pair);
    gls_cfg.stop.target_cost = optimum;
    if (params.per_run_time_cap > 0.0) gls_cfg.stop.max_seconds = params.per_run_time_cap;

    const std::int32_t run_id = static_cast<std::int32_t>(cell);
    std::int64_t last_recorded = std::numeric_limits<std::int64_t>::max();
    SearchHooks hooks;
    hooks.on_iteration_end = [&](const SearchState& state) {
      if (state.best.cost < last_recorded) {
        last_recorded = state.best.cost;
        capture.samples.push_back(TrajectorySample{
            run_id, state.iteration, state.best.cost,
            std::vector<std::int32_t>(state.best.order.begin(), state.best.order.end())});
      }
    };

    RunResult result;
    if (algo_idx == 0) {
      result = run_gls(inst, gls_cfg, &hooks).result;
    } else {
      EbglsConfig eb;
      eb.base = gls_cfg;
      eb.w = w;
      // Landscape runs are target-driven; without a cap they are open-ended
      // and the warm-up falls back to iteration terms.
      StopSpec stop_spec;
      if (params.per_run_time_cap > 0.0) {
        stop_spec.kind = StopSpec::Kind::kTime;
        stop_spec.seconds = params.per_run_time_cap;
      } else {
        stop_spec.kind = StopSpec::Kind::kIterations;
      }
      eb.warmup = params.warmup.resolve(stop_spec, inst.n());
      eb.elite_update_period = params.elite_period;
      result = run_ebgls(inst, eb, &hooks).result;
    }

    if (result.best_cost < last_recorded) {
      capture.samples.push_back(TrajectorySample{
          run_id, result.iterations, result.best_cost,
          std::vector<std::int32_t>(result.best_order.begin(), result.best_order.end())});
    }
    capture.final_order = std::move(result.best_order);
    capture.final_cost = result.best_cost;
    capture.success = result.best_cost <= optimum;
  };

  parallel_cells(resolve_worker_count(params.workers), total, run_cell);

  LandscapeOutcome outcome{OptimaPool(inst.n()), {}, total, 0, {}};
  for (RunCapture& c : captures) {
    if (c.success) {
      ++outcome.successful_runs;
      outcome.pool.insert(c.final_order, c.final_cost);
    }
    for (TrajectorySample& s : c.samples) outcome.corpus.push_back(std::move(s));
  }
  log << "landscape " << inst.name() << ": " << outcome.successful_runs << "/" << total
      << " runs reached the optimum, " << outcome.pool.size() << " distinct optima, "
      << outcome.corpus.size() << " samples\n";
  outcome.report = big_valley_check(outcome.pool, outcome.corpus, inst.n());
  return outcome;
}

}  // namespace ebgls
