#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "ebgls/landscape.hpp"
#include "ebgls/rng.hpp"
#include "test_util.hpp"

using namespace ebgls;

namespace {

// Edge-set differencing oracle built on std::set.
int bond_distance_oracle(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  const auto ea = edges_of(a);
  const auto eb = edges_of(b);
  const std::set<EdgeKey> sa(ea.begin(), ea.end());
  const std::set<EdgeKey> sb(eb.begin(), eb.end());
  int count = 0;
  for (const EdgeKey& e : sa)
    if (!sb.contains(e)) ++count;
  return count;
}

std::vector<std::int32_t> random_order(int n, Rng& rng) {
  std::vector<std::int32_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  return order;
}

// Direct two-pass population covariance oracle.
double fdc_oracle(const std::vector<double>& g, const std::vector<double>& d) {
  const double n = static_cast<double>(g.size());
  double mg = 0, md = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    mg += g[i];
    md += d[i];
  }
  mg /= n;
  md /= n;
  double cov = 0, vg = 0, vd = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    cov += (g[i] - mg) * (d[i] - md);
    vg += (g[i] - mg) * (g[i] - mg);
    vd += (d[i] - md) * (d[i] - md);
  }
  cov /= n;
  vg /= n;
  vd /= n;
  return cov / (std::sqrt(vg) * std::sqrt(vd));
}

// Double-bridge: removes 4 edges, adds 4 others; used to build tours at a
// controlled bond distance.
std::vector<std::int32_t> double_bridge(const std::vector<std::int32_t>& order, Rng& rng) {
  const std::size_t n = order.size();
  std::size_t cuts[3];
  cuts[0] = 1 + rng.below(n - 3);
  cuts[1] = cuts[0] + 1 + rng.below(n - cuts[0] - 2);
  cuts[2] = cuts[1] + 1 + rng.below(n - cuts[1] - 1);
  std::vector<std::int32_t> out;
  out.reserve(n);
  out.insert(out.end(), order.begin(), order.begin() + cuts[0]);
  out.insert(out.end(), order.begin() + cuts[1], order.begin() + cuts[2]);
  out.insert(out.end(), order.begin() + cuts[0], order.begin() + cuts[1]);
  out.insert(out.end(), order.begin() + cuts[2], order.end());
  return out;
}

}  // namespace

TEST_CASE("bond distance basics") {
  Rng rng(10);
  const std::vector<std::int32_t> t = random_order(12, rng);
  CHECK(bond_distance(t, t) == 0);
  std::vector<std::int32_t> reversed(t.rbegin(), t.rend());
  CHECK(bond_distance(t, reversed) == 0);

  const std::vector<std::int32_t> a = {0, 1, 2, 3};
  const std::vector<std::int32_t> b = {0, 2, 1, 3};
  // Shared edges: 1-2 and 0-3; each tour has two edges the other lacks.
  CHECK(bond_distance(a, b) == 2);
  CHECK(bond_distance(b, a) == 2);

  CHECK_THROWS_AS(bond_distance(a, std::vector<std::int32_t>{0, 1, 2}),
                  std::invalid_argument);
}

TEST_CASE("bond distance matches the edge-set differencing oracle") {
  Rng rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(40));
    const auto a = random_order(n, rng);
    const auto b = random_order(n, rng);
    const int d = bond_distance(a, b);
    CHECK(d == bond_distance_oracle(a, b));
    // Equal-size difference sets and the n bound.
    CHECK(d == bond_distance(b, a));
    CHECK(d <= n);
  }
}

TEST_CASE("canonical form dedups rotations and reflections") {
  OptimaPool pool(6);
  const std::vector<std::int32_t> base = {0, 4, 2, 5, 1, 3};
  CHECK(pool.insert(base, 100));
  // Rotation.
  CHECK_FALSE(pool.insert(std::vector<std::int32_t>{2, 5, 1, 3, 0, 4}, 100));
  // Reflection.
  CHECK_FALSE(pool.insert(std::vector<std::int32_t>{3, 1, 5, 2, 4, 0}, 100));
  // Rotated reflection.
  CHECK_FALSE(pool.insert(std::vector<std::int32_t>{4, 0, 3, 1, 5, 2}, 100));
  CHECK(pool.size() == 1);
  // A genuinely different tour grows the pool.
  CHECK(pool.insert(std::vector<std::int32_t>{0, 1, 2, 3, 4, 5}, 100));
  CHECK(pool.size() == 2);
  // Cost mismatches are rejected loudly.
  CHECK_THROWS_AS(pool.insert(std::vector<std::int32_t>{0, 2, 4, 1, 3, 5}, 101),
                  std::invalid_argument);
}

TEST_CASE("nearest optimum distance") {
  OptimaPool pool(5);
  pool.insert(std::vector<std::int32_t>{0, 1, 2, 3, 4}, 10);
  CHECK(nearest_optimum_distance(std::vector<std::int32_t>{0, 1, 2, 3, 4}, pool) == 0);
  CHECK(nearest_optimum_distance(std::vector<std::int32_t>{4, 3, 2, 1, 0}, pool) == 0);

  const std::vector<std::int32_t> other = {0, 2, 1, 3, 4};
  const int single = bond_distance(other, std::vector<std::int32_t>{0, 1, 2, 3, 4});
  CHECK(nearest_optimum_distance(other, pool) == single);

  pool.insert(other, 10);
  // Minimum over members can only shrink.
  CHECK(nearest_optimum_distance(other, pool) == 0);

  const OptimaPool empty(5);
  CHECK_THROWS_AS(nearest_optimum_distance(other, empty), std::invalid_argument);
}

TEST_CASE("pool statistics") {
  OptimaPool pool(8);
  Rng rng(9);
  while (pool.size() < 5) pool.insert(random_order(8, rng), 50);
  const PoolStats stats = optima_pool_stats(pool);
  CHECK(stats.count == 5);
  CHECK(stats.min_pairwise <= stats.mean_pairwise);
  CHECK(stats.mean_pairwise <= stats.max_pairwise);

  OptimaPool single(8);
  single.insert(random_order(8, rng), 50);
  const PoolStats s1 = optima_pool_stats(single);
  CHECK(s1.count == 1);
}

TEST_CASE("fdc of a list against itself is one") {
  const std::vector<double> v = {3, 1, 4, 1, 5, 9, 2, 6};
  CHECK(fdc(v, v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fdc matches the direct covariance oracle") {
  Rng rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(60));
    std::vector<double> g, d;
    for (int i = 0; i < n; ++i) {
      g.push_back(rng.unit() * 1000.0);
      d.push_back(rng.unit() * 50.0);
    }
    double expected;
    try {
      expected = fdc_oracle(g, d);
    } catch (...) {
      continue;
    }
    const double got = fdc(g, d);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    CHECK(got >= -1.0 - 1e-12);
    CHECK(got <= 1.0 + 1e-12);

    // Invariant under positive affine transforms; sign flip under negation.
    std::vector<double> g2 = g;
    for (double& x : g2) x = 2.5 * x + 17.0;
    CHECK(fdc(g2, d) == doctest::Approx(got).epsilon(1e-9));
    std::vector<double> g3 = g;
    for (double& x : g3) x = -x;
    CHECK(fdc(g3, d) == doctest::Approx(-got).epsilon(1e-9));
  }
}

TEST_CASE("fdc rejects degenerate input") {
  const std::vector<double> constant = {2, 2, 2, 2};
  const std::vector<double> varying = {1, 2, 3, 4};
  CHECK_THROWS_AS(fdc(constant, varying), std::invalid_argument);
  CHECK_THROWS_AS(fdc(varying, constant), std::invalid_argument);
  CHECK_THROWS_AS(fdc(varying, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("big valley check on synthetic pools") {
  Rng rng(60);

  SUBCASE("random-tour pool fails the clustering requirement") {
    const int n = 100;
    OptimaPool pool(n);
    while (pool.size() < 4) pool.insert(random_order(n, rng), 1000);
    // Random tours sit at bond distance near n from each other, far above
    // rho * n/2.
    std::vector<TrajectorySample> corpus;
    for (int i = 0; i < 50; ++i) {
      TrajectorySample s;
      s.run_id = 0;
      s.iteration = i;
      s.cost = 1000 + 50 - i;
      s.order = random_order(n, rng);
      corpus.push_back(std::move(s));
    }
    const BigValleyReport report = big_valley_check(pool, corpus, n);
    CHECK(report.evaluable);
    CHECK_FALSE(report.req1);
  }

  SUBCASE("stored pool with widely separated optima fails requirement one") {
    // Two tours of 2319 cities around bond distance 884, the shape of a
    // scattered-optima instance.
    const int n = 2319;
    std::vector<std::int32_t> base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::int32_t> far = base;
    while (bond_distance(base, far) < 884) far = double_bridge(far, rng);
    OptimaPool pool(n);
    pool.insert(base, 5000);
    pool.insert(far, 5000);
    const PoolStats stats = optima_pool_stats(pool);
    CHECK(stats.mean_pairwise >= 884);
    CHECK(stats.mean_pairwise <= 900);

    std::vector<TrajectorySample> corpus;
    for (int i = 0; i < 10; ++i) {
      TrajectorySample s;
      s.run_id = 0;
      s.iteration = i;
      s.cost = 6000 - i * 100;
      s.order = i % 2 == 0 ? base : far;
      corpus.push_back(std::move(s));
    }
    const BigValleyReport report = big_valley_check(pool, corpus, n);
    CHECK_FALSE(report.req1);  // ~884 is not below 0.5 * 2319/2
  }

  SUBCASE("tight pool with strong correlation is a big valley") {
    const int n = 40;
    std::vector<std::int32_t> base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    OptimaPool pool(n);
    pool.insert(base, 1000);

    std::vector<TrajectorySample> corpus;
    Rng noise(5);
    std::vector<std::int32_t> wander = base;
    for (int i = 0; i < 30; ++i) {
      TrajectorySample s;
      s.run_id = 0;
      s.iteration = 30 - i;
      s.order = wander;
      s.cost = 1000 + bond_distance(wander, base) * 10;  // cost tracks distance
      corpus.push_back(std::move(s));
      wander = double_bridge(wander, noise);
    }
    const BigValleyReport report = big_valley_check(pool, corpus, n);
    CHECK(report.evaluable);
    CHECK(report.req1);  // singleton pool: vacuously clustered
    CHECK(report.req2);
    CHECK(report.big_valley());
  }
}

TEST_CASE("trajectory round trip and scatter shape") {
  Rng rng(8);
  std::vector<TrajectorySample> corpus;
  for (int i = 0; i < 20; ++i) {
    TrajectorySample s;
    s.run_id = i % 3;
    s.iteration = i * 7;
    s.cost = 500 - i;
    s.order = random_order(10, rng);
    corpus.push_back(std::move(s));
  }
  std::ostringstream out;
  write_trajectory(out, corpus);
  std::istringstream in(out.str());
  const auto loaded = read_trajectory(in);
  REQUIRE(loaded.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(loaded[i].run_id == corpus[i].run_id);
    CHECK(loaded[i].iteration == corpus[i].iteration);
    CHECK(loaded[i].cost == corpus[i].cost);
    CHECK(loaded[i].order == corpus[i].order);
  }

  OptimaPool pool(10);
  pool.insert(random_order(10, rng), 480);
  std::ostringstream scatter;
  write_scatter_csv(scatter, pool, corpus);
  int lines = 0;
  std::string line;
  std::istringstream scatter_in(scatter.str());
  while (std::getline(scatter_in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 21);  // header plus one row per recorded sample
}
