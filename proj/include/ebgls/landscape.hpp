#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ebgls/tour.hpp"

namespace ebgls {

/// Number of edges of t1 absent from t2. Symmetric in cardinality for
/// equal-length tours, zero iff the edge sets coincide, bounded by n.
int bond_distance(std::span<const std::int32_t> t1, std::span<const std::int32_t> t2);
int bond_distance(const Tour& t1, const Tour& t2);

/// Canonical representative of a cyclic order modulo rotation and
/// reflection: city 0 first, second entry the smaller of its two neighbors.
std::vector<std::int32_t> canonical_tour(std::span<const std::int32_t> order);

/// Distinct optimal tours of one instance, deduplicated under the canonical
/// form. All members share the optimal cost.
class OptimaPool {
 public:
  explicit OptimaPool(int n) : n_(n) {}

  /// Inserts `order` if no rotation/reflection of it is present yet.
  /// Returns true when the pool grew. All inserted tours must share one
  /// cost; a mismatch throws.
  bool insert(std::span<const std::int32_t> order, std::int64_t cost);

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::int64_t optimal_cost() const { return optimal_cost_; }
  const std::vector<std::vector<std::int32_t>>& members() const { return members_; }

 private:
  int n_;
  std::int64_t optimal_cost_ = -1;
  std::vector<std::vector<std::int32_t>> members_;
};

/// Smallest bond distance from `order` to any pool member.
int nearest_optimum_distance(std::span<const std::int32_t> order, const OptimaPool& pool);

struct PoolStats {
  std::size_t count = 0;
  // Pairwise bond-distance statistics; undefined (zeroed) for singletons.
  int min_pairwise = 0;
  int max_pairwise = 0;
  double mean_pairwise = 0.0;
};
PoolStats optima_pool_stats(const OptimaPool& pool);

/// Fitness-distance correlation: population covariance over the product of
/// population standard deviations. Throws when either list is constant.
double fdc(std::span<const double> costs, std::span<const double> dists);

/// One best-so-far improvement record of a run.
struct TrajectorySample {
  std::int32_t run_id = 0;
  std::int64_t iteration = 0;
  std::int64_t cost = 0;
  std::vector<std::int32_t> order;
};

struct BigValleyReport {
  bool evaluable = false;
  bool req1 = false;  // optima clustered: mean pairwise distance < rho * n/2
  bool req2 = false;  // strong fitness-distance correlation: fdc >= theta
  double fdc_value = 0.0;
  double mean_opt_dist = 0.0;

  bool big_valley() const { return evaluable && req1 && req2; }
};

struct BigValleyThresholds {
  double rho = 0.5;
  double theta = 0.5;
};

/// Two-requirement big-valley check over a sampled trajectory corpus and
/// the pool of known optima. Singleton pools satisfy the first requirement
/// vacuously.
BigValleyReport big_valley_check(const OptimaPool& pool,
                                 const std::vector<TrajectorySample>& corpus, int n,
                                 BigValleyThresholds thresholds = {});

/// Line format: run_id,iteration,cost,space-separated city order.
void write_trajectory(std::ostream& out, const std::vector<TrajectorySample>& corpus);
std::vector<TrajectorySample> read_trajectory(std::istream& in);

/// Scatter rows (nearest-optimum distance, cost excess percent), one per
/// recorded sample.
void write_scatter_csv(std::ostream& out, const OptimaPool& pool,
                       const std::vector<TrajectorySample>& corpus);

}  // namespace ebgls
