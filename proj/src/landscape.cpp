#include "ebgls/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ebgls/stats.hpp"

namespace ebgls {

int bond_distance(std::span<const std::int32_t> t1, std::span<const std::int32_t> t2) {
  if (t1.size() != t2.size())
    throw std::invalid_argument("bond_distance: tours of different size");
  const std::size_t n = t1.size();
  std::unordered_set<EdgeKey, EdgeKeyHash> other;
  other.reserve(n * 2);
  for (std::size_t k = 0; k < n; ++k)
    other.insert(make_edge(t2[k], t2[k + 1 == n ? 0 : k + 1]));
  int missing = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (!other.contains(make_edge(t1[k], t1[k + 1 == n ? 0 : k + 1]))) ++missing;
  return missing;
}

int bond_distance(const Tour& t1, const Tour& t2) {
  return bond_distance(t1.order(), t2.order());
}

std::vector<std::int32_t> canonical_tour(std::span<const std::int32_t> order) {
  const std::size_t n = order.size();
  std::size_t zero_pos = 0;
  while (zero_pos < n && order[zero_pos] != 0) ++zero_pos;
  if (zero_pos == n) throw std::invalid_argument("canonical_tour: city 0 missing");

  std::vector<std::int32_t> out(n);
  const std::int32_t fwd = order[(zero_pos + 1) % n];
  const std::int32_t bwd = order[(zero_pos + n - 1) % n];
  if (fwd <= bwd) {
    for (std::size_t k = 0; k < n; ++k) out[k] = order[(zero_pos + k) % n];
  } else {
    for (std::size_t k = 0; k < n; ++k) out[k] = order[(zero_pos + n - k) % n];
  }
  return out;
}

bool OptimaPool::insert(std::span<const std::int32_t> order, std::int64_t cost) {
  if (static_cast<int>(order.size()) != n_)
    throw std::invalid_argument("OptimaPool: tour size mismatch");
  if (optimal_cost_ >= 0 && cost != optimal_cost_)
    throw std::invalid_argument("OptimaPool: cost differs from recorded optimum");
  std::vector<std::int32_t> canon = canonical_tour(order);
  for (const auto& m : members_)
    if (m == canon) return false;
  optimal_cost_ = cost;
  members_.push_back(std::move(canon));
  return true;
}

int nearest_optimum_distance(std::span<const std::int32_t> order, const OptimaPool& pool) {
  if (pool.empty()) throw std::invalid_argument("nearest_optimum_distance: empty pool");
  int best = std::numeric_limits<int>::max();
  for (const auto& m : pool.members()) best = std::min(best, bond_distance(order, m));
  return best;
}

PoolStats optima_pool_stats(const OptimaPool& pool) {
  PoolStats stats;
  stats.count = pool.size();
  if (pool.size() < 2) return stats;
  const auto& members = pool.members();
  std::int64_t total = 0;
  std::int64_t pairs = 0;
  int lo = std::numeric_limits<int>::max();
  int hi = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const int d = bond_distance(members[i], members[j]);
      total += d;
      ++pairs;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  stats.min_pairwise = lo;
  stats.max_pairwise = hi;
  stats.mean_pairwise = static_cast<double>(total) / static_cast<double>(pairs);
  return stats;
}

double fdc(std::span<const double> costs, std::span<const double> dists) {
  if (costs.size() != dists.size() || costs.size() < 2)
    throw std::invalid_argument("fdc: need two equal-length lists of size >= 2");
  const double n = static_cast<double>(costs.size());
  double mean_c = 0.0, mean_d = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    mean_c += costs[i];
    mean_d += dists[i];
  }
  mean_c /= n;
  mean_d /= n;
  double cov = 0.0, var_c = 0.0, var_d = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const double dc = costs[i] - mean_c;
    const double dd = dists[i] - mean_d;
    cov += dc * dd;
    var_c += dc * dc;
    var_d += dd * dd;
  }
  if (var_c == 0.0 || var_d == 0.0)
    throw std::invalid_argument("fdc: undefined for a constant list");
  return cov / std::sqrt(var_c * var_d);
}

BigValleyReport big_valley_check(const OptimaPool& pool,
                                 const std::vector<TrajectorySample>& corpus, int n,
                                 BigValleyThresholds thresholds) {
  BigValleyReport report;
  if (pool.empty() || corpus.size() < 2) return report;

  std::vector<double> costs, dists;
  costs.reserve(corpus.size());
  dists.reserve(corpus.size());
  for (const TrajectorySample& s : corpus) {
    costs.push_back(static_cast<double>(s.cost));
    dists.push_back(static_cast<double>(nearest_optimum_distance(s.order, pool)));
  }

  const PoolStats stats = optima_pool_stats(pool);
  report.mean_opt_dist = stats.mean_pairwise;
  report.req1 = pool.size() < 2 ||
                stats.mean_pairwise < thresholds.rho * (static_cast<double>(n) / 2.0);
  try {
    report.fdc_value = fdc(costs, dists);
  } catch (const std::invalid_argument&) {
    return report;  // degenerate corpus: not evaluable
  }
  report.req2 = report.fdc_value >= thresholds.theta;
  report.evaluable = true;
  return report;
}

void write_trajectory(std::ostream& out, const std::vector<TrajectorySample>& corpus) {
  for (const TrajectorySample& s : corpus) {
    out << s.run_id << ',' << s.iteration << ',' << s.cost << ',';
    for (std::size_t k = 0; k < s.order.size(); ++k) {
      if (k > 0) out << ' ';
      out << s.order[k];
    }
    out << '\n';
  }
}

std::vector<TrajectorySample> read_trajectory(std::istream& in) {
  std::vector<TrajectorySample> corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    TrajectorySample s;
    std::istringstream ls(line);
    char sep;
    if (!(ls >> s.run_id >> sep >> s.iteration >> sep >> s.cost >> sep))
      throw std::runtime_error("trajectory: malformed line");
    std::int32_t city;
    while (ls >> city) s.order.push_back(city);
    corpus.push_back(std::move(s));
  }
  return corpus;
}

void write_scatter_csv(std::ostream& out, const OptimaPool& pool,
                       const std::vector<TrajectorySample>& corpus) {
  out << "distance,excess_percent\n";
  std::ostringstream fmt;
  fmt << std::fixed << std::setprecision(6);
  for (const TrajectorySample& s : corpus) {
    const int d = nearest_optimum_distance(s.order, pool);
    const double excess = excess_percent(s.cost, pool.optimal_cost());
    fmt.str("");
    fmt << d << ',' << excess << '\n';
    out << fmt.str();
  }
}

}  // namespace ebgls
