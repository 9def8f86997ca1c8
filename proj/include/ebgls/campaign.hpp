#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ebgls/ebgls.hpp"
#include "ebgls/gls.hpp"
#include "ebgls/landscape.hpp"
#include "ebgls/stats.hpp"
#include "ebgls/tsplib.hpp"

namespace ebgls {

/// How a campaign cell stops: the protocol default derives a time budget of
/// ceil(n/10) seconds from the instance size.
struct StopSpec {
  enum class Kind { kAuto, kTime, kIterations };
  Kind kind = Kind::kAuto;
  double seconds = 0.0;
  std::int64_t iterations = 0;

  static StopSpec parse(const std::string& text);
  std::string to_string() const;
  bool time_based() const { return kind != Kind::kIterations; }
  double budget_seconds(int n) const;
};

/// Warm-up selector: "auto" follows the comparison protocol (time-based
/// runs start the elite bias at T/10 for instances of at least 1000 cities
/// and immediately below that; iteration-based runs warm up for 10000
/// iterations).
struct WarmupSpec {
  enum class Kind { kAuto, kIterations, kTimeFraction };
  Kind kind = Kind::kAuto;
  std::int64_t iterations = 0;
  double fraction = 0.0;

  static WarmupSpec parse(const std::string& text);
  std::string to_string() const;
  Warmup resolve(const StopSpec& stop, int n) const;
};

struct CampaignConfig {
  std::vector<std::string> instances;  // paths to TSPLIB files
  std::vector<std::string> algorithms = {"gls", "ebgls"};
  int runs = 10;
  StopSpec stop;
  std::uint64_t master_seed = 1;
  std::string output_dir = "campaign-out";
  std::string optima_path;
  std::string lambda_coeff = "0.3";
  std::string w = "2";
  WarmupSpec warmup;
  std::int64_t elite_period = 100;
  std::string start = "random";  // or "nn"
  int workers = 0;               // 0: hardware concurrency

  static CampaignConfig parse(std::istream& in);
  static CampaignConfig parse_file(const std::filesystem::path& path);

  /// Canonical one-line-per-key serialization; the fingerprint is its hash.
  std::string canonical_text() const;
  std::string fingerprint() const;

  StartKind start_kind() const;
  void validate() const;
};

struct RunRecord {
  std::string instance;
  std::string algorithm;
  int pair_index = 0;
  std::uint64_t seed = 0;
  std::int64_t start_cost = 0;
  std::int64_t best_cost = 0;
  std::int64_t iterations = 0;
  int success = -1;  // -1 when no optimum is registered
  double excess = -1.0;
  double seconds = 0.0;
  bool seconds_is_exact_budget = false;  // unsuccessful time-budget run: recorded as T
  std::string stop_reason;
};

struct InstanceReport {
  std::string instance;
  int n = 0;
  double max_runtime = 0.0;  // seconds, 0 when iteration-based
  bool optimum_known = false;
  // Indexed like CampaignConfig::algorithms.
  std::vector<int> success;
  std::vector<double> mean_excess;
  std::vector<double> mean_runtime;
  UTestResult excess_test;
  UTestResult runtime_test;
  bool runtime_tested = false;
  bool excess_tested = false;
  std::string verdict;  // algorithm name or "incomparable"
};

struct CampaignOutcome {
  std::vector<RunRecord> records;  // deterministic order: instance, algo, pair
  std::vector<InstanceReport> reports;
};

/// Runs the full campaign over a worker pool. Per-run seeds derive from
/// (master seed, instance name, pair index) only, so results do not depend
/// on the worker count. The EBGLS_WORKERS environment variable overrides
/// the configured worker count.
CampaignOutcome run_campaign(const CampaignConfig& cfg, std::ostream& log);

/// Result CSVs. Every file starts with a fingerprint comment line. The
/// runtime column of iteration-budget campaigns is "-": wall-clock is not a
/// deterministic result there and moves to the log instead.
void write_runs_csv(std::ostream& out, const CampaignConfig& cfg,
                    const std::vector<RunRecord>& records);
void write_report_csv(std::ostream& out, const CampaignConfig& cfg,
                      const std::vector<InstanceReport>& reports);

struct LandscapeParams {
  int runs_per_algorithm = 20;
  std::uint64_t master_seed = 1;
  double per_run_time_cap = 0.0;  // 0: no cap, run until the optimum
  std::string lambda_coeff = "0.3";
  std::string w = "2";
  WarmupSpec warmup;
  std::int64_t elite_period = 100;
  int workers = 0;
};

struct LandscapeOutcome {
  OptimaPool pool;
  std::vector<TrajectorySample> corpus;
  int total_runs = 0;
  int successful_runs = 0;
  BigValleyReport report;
};

/// Landscape sampling: paired gls/ebgls runs to the optimum, accumulating
/// the distinct-optima pool and the best-so-far trajectory corpus.
LandscapeOutcome run_landscape(const Instance& inst, std::int64_t optimum,
                               const LandscapeParams& params, std::ostream& log);

int resolve_worker_count(int configured);

}  // namespace ebgls
