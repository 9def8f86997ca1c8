#include "ebgls/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ebgls/landscape.hpp"

namespace ebgls {

double excess_percent(std::int64_t best_cost, std::int64_t optimal_cost) {
  if (optimal_cost <= 0) throw std::invalid_argument("excess: non-positive optimum");
  if (best_cost < optimal_cost)
    throw std::invalid_argument("excess: cost below the registered optimum (broken registry?)");
  return static_cast<double>(best_cost - optimal_cost) / static_cast<double>(optimal_cost) *
         100.0;
}

std::vector<double> average_series(const std::vector<std::vector<double>>& values_per_run) {
  std::vector<double> mean;
  if (values_per_run.empty()) return mean;
  const std::size_t checkpoints = values_per_run.size();
  mean.resize(checkpoints, 0.0);
  for (std::size_t j = 0; j < checkpoints; ++j) {
    const auto& runs = values_per_run[j];
    if (runs.empty()) {
      mean[j] = 0.0;
      continue;
    }
    double sum = 0.0;
    for (const double v : runs) sum += v;
    mean[j] = sum / static_cast<double>(runs.size());
  }
  return mean;
}

double undesirable_ratio(const PenaltyStore& penalties, std::span<const EdgeKey> good_edges) {
  if (penalties.total() <= 0) throw std::invalid_argument("undesirable_ratio: no penalties yet");
  std::int64_t good = 0;
  for (const EdgeKey& e : good_edges) good += penalties.get(e);
  return static_cast<double>(good) / static_cast<double>(penalties.total());
}

namespace {

// Midranks of the pooled samples, scaled by 2 so they stay integral under
// ties. Also returns the tie-group sizes.
void pooled_midranks(std::span<const double> a, std::span<const double> b,
                     std::vector<std::int64_t>& ranks2_a, std::vector<std::int64_t>& ranks2_b,
                     std::vector<std::int64_t>& tie_sizes) {
  struct Entry {
    double value;
    bool from_a;
    std::size_t index;
  };
  std::vector<Entry> pool;
  pool.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) pool.push_back({a[i], true, i});
  for (std::size_t i = 0; i < b.size(); ++i) pool.push_back({b[i], false, i});
  std::sort(pool.begin(), pool.end(),
            [](const Entry& x, const Entry& y) { return x.value < y.value; });

  ranks2_a.assign(a.size(), 0);
  ranks2_b.assign(b.size(), 0);
  tie_sizes.clear();
  std::size_t i = 0;
  while (i < pool.size()) {
    std::size_t j = i;
    while (j < pool.size() && pool[j].value == pool[i].value) ++j;
    // ranks i+1 .. j (1-based); midrank*2 = (i+1 + j)
    const std::int64_t rank2 = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (pool[k].from_a)
        ranks2_a[pool[k].index] = rank2;
      else
        ranks2_b[pool[k].index] = rank2;
    }
    tie_sizes.push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

constexpr std::uint64_t kExactEnumerationCap = 2'000'000;

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k) {
  k = std::min(k, n - k);
  long double result = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (result > static_cast<long double>(kExactEnumerationCap) * 4) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(result + 0.5L);
}

// Exact two-sided p: enumerate every assignment of n_a of the pooled
// midranks to sample a, conditioning on the observed (tied) pool.
double exact_two_sided_p(const std::vector<std::int64_t>& pool_ranks2, std::size_t n_a,
                         std::int64_t u2_observed) {
  const std::size_t n = pool_ranks2.size();
  std::uint64_t le = 0, ge = 0, total = 0;
  std::vector<std::size_t> pick(n_a);
  std::iota(pick.begin(), pick.end(), 0);
  const std::int64_t base = static_cast<std::int64_t>(n_a) * (static_cast<std::int64_t>(n_a) + 1);
  while (true) {
    std::int64_t rank2_sum = 0;
    for (const std::size_t idx : pick) rank2_sum += pool_ranks2[idx];
    const std::int64_t u2 = rank2_sum - base;  // 2*U of this assignment
    if (u2 <= u2_observed) ++le;
    if (u2 >= u2_observed) ++ge;
    ++total;
    // next combination in lexicographic order
    bool advanced = false;
    std::size_t i = n_a;
    while (i-- > 0) {
      if (pick[i] != i + n - n_a) {
        ++pick[i];
        for (std::size_t j = i + 1; j < n_a; ++j) pick[j] = pick[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      const double tail = std::min(le, ge) / static_cast<double>(total);
      return std::min(1.0, 2.0 * tail);
    }
  }
}

}  // namespace

UTestResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b) {
  if (sample_a.empty() || sample_b.empty())
    throw std::invalid_argument("mann_whitney_u: empty sample");
  const std::size_t n_a = sample_a.size();
  const std::size_t n_b = sample_b.size();
  const std::size_t n = n_a + n_b;

  std::vector<std::int64_t> ranks2_a, ranks2_b, tie_sizes;
  pooled_midranks(sample_a, sample_b, ranks2_a, ranks2_b, tie_sizes);

  std::int64_t rank2_sum_a = 0;
  for (const std::int64_t r : ranks2_a) rank2_sum_a += r;
  // 2*U_a = 2*R_a - n_a(n_a+1)
  const std::int64_t u2 =
      rank2_sum_a - static_cast<std::int64_t>(n_a) * (static_cast<std::int64_t>(n_a) + 1);

  UTestResult out;
  out.u = static_cast<double>(u2) / 2.0;

  if (tie_sizes.size() == 1) {
    // Every observation identical: the test carries no information.
    out.p_two_sided = 1.0;
    out.applicable = false;
    return out;
  }

  const std::size_t n_min = std::min(n_a, n_b);
  if (n_min < 8 && binomial_capped(n, n_min) <= kExactEnumerationCap) {
    std::vector<std::int64_t> pool_ranks2;
    pool_ranks2.reserve(n);
    pool_ranks2.insert(pool_ranks2.end(), ranks2_a.begin(), ranks2_a.end());
    pool_ranks2.insert(pool_ranks2.end(), ranks2_b.begin(), ranks2_b.end());
    out.p_two_sided = exact_two_sided_p(pool_ranks2, n_a, u2);
    if (out.p_two_sided <= 0.0) out.p_two_sided = std::numeric_limits<double>::min();
    return out;
  }

  const double mu = static_cast<double>(n_a) * static_cast<double>(n_b) / 2.0;
  double tie_term = 0.0;
  for (const std::int64_t t : tie_sizes)
    tie_term += static_cast<double>(t) * t * t - static_cast<double>(t);
  const double dn = static_cast<double>(n);
  const double variance = static_cast<double>(n_a) * static_cast<double>(n_b) / 12.0 *
                          ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (variance <= 0.0) {
    out.p_two_sided = 1.0;
    out.applicable = false;
    return out;
  }
  double centered = out.u - mu;
  if (centered > 0.0)
    centered -= 0.5;
  else if (centered < 0.0)
    centered += 0.5;
  const double z = centered / std::sqrt(variance);
  out.p_two_sided = std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
  if (out.p_two_sided <= 0.0) out.p_two_sided = std::numeric_limits<double>::min();
  return out;
}

Dominance dominance_verdict(MetricComparison success, MetricComparison excess,
                            MetricComparison runtime) {
  const MetricComparison metrics[3] = {success, excess, runtime};
  bool a_better = false, a_worse = false;
  for (const MetricComparison& m : metrics) {
    if (!m.significant || m.direction == 0) continue;
    if (m.direction < 0)
      a_better = true;
    else
      a_worse = true;
  }
  if (a_better && !a_worse) return Dominance::kAWins;
  if (a_worse && !a_better) return Dominance::kBWins;
  return Dominance::kIncomparable;
}

MetricSeries build_metric_series(const std::vector<RunCheckpointLog>& logs,
                                 const std::vector<std::vector<std::int32_t>>& final_solutions,
                                 std::int64_t optimal_cost, std::int64_t stride) {
  if (logs.size() != final_solutions.size())
    throw std::invalid_argument("build_metric_series: log/solution count mismatch");
  MetricSeries series;
  series.stride = stride;
  std::size_t checkpoints = 0;
  for (const RunCheckpointLog& log : logs)
    checkpoints = std::max(checkpoints, log.best_cost.size());
  series.excess.resize(checkpoints);
  series.distance.resize(checkpoints);
  series.ratio.resize(checkpoints);
  series.ratio_delta.resize(checkpoints);

  for (std::size_t j = 0; j < checkpoints; ++j) {
    const std::int64_t checkpoint_iteration = static_cast<std::int64_t>(j + 1) * stride;
    for (std::size_t k = 0; k < logs.size(); ++k) {
      const RunCheckpointLog& log = logs[k];
      const bool finished_by_now = log.finished_at_iteration >= 0 &&
                                   log.finished_at_iteration <= checkpoint_iteration;
      if (finished_by_now || j >= log.best_cost.size()) {
        series.excess[j].push_back(0.0);
        series.distance[j].push_back(0.0);
        continue;  // excluded from the penalty ratios
      }
      series.excess[j].push_back(excess_percent(log.best_cost[j], optimal_cost));
      series.distance[j].push_back(
          static_cast<double>(bond_distance(log.best_order[j], final_solutions[k])));
      if (log.total_penalty_mass[j] > 0) {
        series.ratio[j].push_back(static_cast<double>(log.good_penalty_mass[j]) /
                                  static_cast<double>(log.total_penalty_mass[j]));
      }
      const std::int64_t prev_good = j == 0 ? 0 : log.good_penalty_mass[j - 1];
      const std::int64_t prev_total = j == 0 ? 0 : log.total_penalty_mass[j - 1];
      const std::int64_t dg = log.good_penalty_mass[j] - prev_good;
      const std::int64_t dt = log.total_penalty_mass[j] - prev_total;
      if (dt > 0)
        series.ratio_delta[j].push_back(static_cast<double>(dg) / static_cast<double>(dt));
    }
  }
  return series;
}

}  // namespace ebgls
