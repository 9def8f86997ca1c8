#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ebgls/edge.hpp"
#include "ebgls/penalty.hpp"

namespace ebgls {

/// Percentage gap of a solution over the known optimum.
double excess_percent(std::int64_t best_cost, std::int64_t optimal_cost);

/// Arithmetic mean per checkpoint over runs. Expects rectangular data with
/// finish-padding already applied.
std::vector<double> average_series(const std::vector<std::vector<double>>& values_per_run);

/// Share of the total penalty mass sitting on `good_edges` (edges of the
/// known optima). Throws when no penalty has been assigned yet.
double undesirable_ratio(const PenaltyStore& penalties, std::span<const EdgeKey> good_edges);

struct UTestResult {
  double u = 0.0;           // U statistic of the first sample
  double p_two_sided = 1.0; // in (0, 1]
  bool applicable = true;   // false when both samples are one constant value
};

/// Mann-Whitney U with midrank tie handling. Exact enumeration of rank
/// splits for small samples, otherwise the normal approximation with
/// tie-corrected variance and continuity correction.
UTestResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b);

enum class Dominance { kAWins, kBWins, kIncomparable };

/// Direction of one metric comparison: negative favors A, positive favors
/// B, zero is neutral. `significant` is true when the difference counts
/// (raw ordering for success counts, p < alpha for tested metrics).
struct MetricComparison {
  int direction = 0;
  bool significant = false;

  static MetricComparison neutral() { return {0, false}; }
};

/// Domination verdict: A wins iff A is not significantly worse on any
/// metric and significantly better on at least one.
Dominance dominance_verdict(MetricComparison success, MetricComparison excess,
                            MetricComparison runtime);

/// Per-checkpoint behavioral metrics over a set of runs (checkpoint stride
/// in iterations). Values are indexed [checkpoint][run]; entries of runs
/// already finished are padded with zero for excess/distance and excluded
/// from the penalty ratios.
struct MetricSeries {
  std::int64_t stride = 1000;
  std::vector<std::vector<double>> excess;        // zero-padded after finish
  std::vector<std::vector<double>> distance;      // zero-padded after finish
  std::vector<std::vector<double>> ratio;         // only unfinished runs
  std::vector<std::vector<double>> ratio_delta;   // only unfinished runs

  std::vector<double> mean_excess() const { return average_series(excess); }
  std::vector<double> mean_distance() const { return average_series(distance); }
  std::vector<double> mean_ratio() const { return average_series(ratio); }
  std::vector<double> mean_ratio_delta() const { return average_series(ratio_delta); }
};

/// Raw per-run checkpoint log captured during a search.
struct RunCheckpointLog {
  std::int64_t finished_at_iteration = -1;  // -1: did not reach the optimum
  std::vector<std::int64_t> best_cost;      // at checkpoints 1..m
  std::vector<std::vector<std::int32_t>> best_order;
  std::vector<std::int64_t> good_penalty_mass;
  std::vector<std::int64_t> total_penalty_mass;
};

/// Builds the metric series from per-run logs. `optimal_cost` anchors the
/// excess; the distance column is measured against each run's own final
/// solution.
MetricSeries build_metric_series(const std::vector<RunCheckpointLog>& logs,
                                 const std::vector<std::vector<std::int32_t>>& final_solutions,
                                 std::int64_t optimal_cost, std::int64_t stride);

}  // namespace ebgls
