#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ebgls/rng.hpp"
#include "ebgls/stats.hpp"
#include "test_util.hpp"

using namespace ebgls;

TEST_CASE("excess percent") {
  CHECK(excess_percent(100, 100) == 0.0);
  CHECK(excess_percent(110, 100) == doctest::Approx(10.0));
  CHECK_THROWS_AS(excess_percent(99, 100), std::invalid_argument);
  CHECK_THROWS_AS(excess_percent(10, 0), std::invalid_argument);

  // Scaling all costs leaves the excess unchanged.
  CHECK(excess_percent(110 * 7, 100 * 7) == doctest::Approx(excess_percent(110, 100)));
}

TEST_CASE("average series") {
  const std::vector<std::vector<double>> single = {{1.5}, {2.5}, {4.0}};
  const std::vector<double> m1 = average_series(single);
  CHECK(m1 == std::vector<double>{1.5, 2.5, 4.0});

  const std::vector<std::vector<double>> two = {{0.0, 3.0}};
  CHECK(average_series(two) == std::vector<double>{1.5});

  // Dyadic values make the mean exactly representable: independent
  // summation must agree bit for bit.
  Rng rng(55);
  std::vector<std::vector<double>> data(4);
  for (auto& checkpoint : data)
    for (int r = 0; r < 8; ++r)
      checkpoint.push_back(static_cast<double>(rng.below(1024)) / 8.0);
  const auto mean = average_series(data);
  for (std::size_t j = 0; j < data.size(); ++j) {
    double sum = 0.0;
    for (const double v : data[j]) sum += v;
    CHECK(mean[j] == sum / 8.0);
  }
}

TEST_CASE("undesirable ratio") {
  PenaltyStore store(10);
  CHECK_THROWS_AS(undesirable_ratio(store, std::vector<EdgeKey>{}), std::invalid_argument);

  const std::vector<EdgeKey> good = {make_edge(0, 1), make_edge(2, 3)};
  store.increment(make_edge(0, 1));
  store.increment(make_edge(0, 1));
  store.increment(make_edge(2, 3));
  CHECK(undesirable_ratio(store, good) == doctest::Approx(1.0));

  store.increment(make_edge(4, 5));
  CHECK(undesirable_ratio(store, good) == doctest::Approx(3.0 / 4.0));

  PenaltyStore disjoint(10);
  disjoint.increment(make_edge(7, 8));
  CHECK(undesirable_ratio(disjoint, good) == doctest::Approx(0.0));
}

TEST_CASE("mann-whitney exact case from full enumeration") {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {4, 5, 6};
  const UTestResult r = mann_whitney_u(a, b);
  CHECK(r.u == 0.0);
  CHECK(r.p_two_sided == doctest::Approx(0.1));  // 2 / C(6,3)
  CHECK(r.applicable);

  const UTestResult swapped = mann_whitney_u(b, a);
  CHECK(swapped.u == 9.0);
  CHECK(swapped.p_two_sided == doctest::Approx(r.p_two_sided));
}

TEST_CASE("u statistics of swapped samples always sum to the product") {
  Rng rng(8080);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n_a = 1 + rng.below(12);
    const std::size_t n_b = 1 + rng.below(12);
    std::vector<double> a, b;
    // Small integer draws force heavy ties.
    for (std::size_t i = 0; i < n_a; ++i) a.push_back(static_cast<double>(rng.below(6)));
    for (std::size_t i = 0; i < n_b; ++i) b.push_back(static_cast<double>(rng.below(6)));
    const UTestResult ab = mann_whitney_u(a, b);
    const UTestResult ba = mann_whitney_u(b, a);
    CHECK(ab.u + ba.u == doctest::Approx(static_cast<double>(n_a * n_b)));
    CHECK(ab.p_two_sided == doctest::Approx(ba.p_two_sided));
    CHECK(ab.p_two_sided > 0.0);
    CHECK(ab.p_two_sided <= 1.0);
  }
}

TEST_CASE("identical samples do not reject") {
  std::vector<double> a(10), b(10);
  std::iota(a.begin(), a.end(), 1.0);
  std::iota(b.begin(), b.end(), 1.0);
  const UTestResult r = mann_whitney_u(a, b);
  CHECK(r.p_two_sided == doctest::Approx(1.0));

  // Both samples one constant value: the test is not applicable.
  const std::vector<double> c1(5, 3.0), c2(7, 3.0);
  const UTestResult degenerate = mann_whitney_u(c1, c2);
  CHECK_FALSE(degenerate.applicable);
  CHECK(degenerate.p_two_sided == doctest::Approx(1.0));
}

TEST_CASE("normal approximation matches the published critical value for n=10,10") {
  // Two-tailed alpha 0.05 with n1 = n2 = 10 rejects at U <= 23.
  // U(a over b) counts pairs where a exceeds b here; build samples hitting
  // exactly U = 23 and U = 24.
  const std::vector<double> b = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  const std::vector<double> a23 = {105, 104, 35, 1, 2, 3, 4, 5, 6, 7};  // 10+10+3
  const std::vector<double> a24 = {105, 104, 45, 1, 2, 3, 4, 5, 6, 7};  // 10+10+4
  const UTestResult r23 = mann_whitney_u(a23, b);
  CHECK(r23.u == 23.0);
  CHECK(r23.p_two_sided < 0.05);
  const UTestResult r24 = mann_whitney_u(a24, b);
  CHECK(r24.u == 24.0);
  CHECK(r24.p_two_sided > 0.05);
}

TEST_CASE("dominance verdicts") {
  const auto better = MetricComparison{-1, true};
  const auto worse = MetricComparison{1, true};
  const auto neutral = MetricComparison::neutral();

  CHECK(dominance_verdict(better, better, better) == Dominance::kAWins);
  CHECK(dominance_verdict(neutral, better, neutral) == Dominance::kAWins);
  CHECK(dominance_verdict(neutral, better, worse) == Dominance::kIncomparable);
  CHECK(dominance_verdict(neutral, neutral, neutral) == Dominance::kIncomparable);
  CHECK(dominance_verdict(worse, worse, neutral) == Dominance::kBWins);

  // Shape of the pr1002 comparison: as algorithm B, the elite-biased runs
  // win success 82 to 0 and both tested metrics significantly.
  const MetricComparison success{1, true};   // B has more successes
  const MetricComparison excess{1, true};    // B mean excess lower, p tiny
  const MetricComparison runtime{1, true};   // B mean runtime lower, p tiny
  CHECK(dominance_verdict(success, excess, runtime) == Dominance::kBWins);
}

TEST_CASE("metric series padding and exclusion rules") {
  // Three runs, stride 10. Run 0 never finishes, run 1 finishes during the
  // second window (iteration 15), run 2 finishes in the first (iteration 3).
  std::vector<RunCheckpointLog> logs(3);
  std::vector<std::vector<std::int32_t>> finals(3);
  const std::vector<std::int32_t> base = {0, 1, 2, 3, 4};

  logs[0].finished_at_iteration = -1;
  logs[0].best_cost = {120, 110, 105};
  logs[0].best_order = {base, base, base};
  logs[0].good_penalty_mass = {1, 2, 3};
  logs[0].total_penalty_mass = {2, 5, 9};
  finals[0] = base;

  logs[1].finished_at_iteration = 15;
  logs[1].best_cost = {130};
  logs[1].best_order = {base};
  logs[1].good_penalty_mass = {1};
  logs[1].total_penalty_mass = {4};
  finals[1] = base;

  logs[2].finished_at_iteration = 3;
  logs[2].best_cost = {};
  logs[2].best_order = {};
  logs[2].good_penalty_mass = {};
  logs[2].total_penalty_mass = {};
  finals[2] = base;

  const MetricSeries series = build_metric_series(logs, finals, 100, 10);
  REQUIRE(series.excess.size() == 3);

  // Checkpoint 1 (iteration 10): runs 0 and 1 alive, run 2 zero-padded.
  CHECK(series.excess[0].size() == 3);
  CHECK(series.excess[0][0] == doctest::Approx(20.0));
  CHECK(series.excess[0][1] == doctest::Approx(30.0));
  CHECK(series.excess[0][2] == 0.0);
  CHECK(series.ratio[0].size() == 2);  // finished runs are excluded entirely
  CHECK(series.ratio[0][0] == doctest::Approx(0.5));
  CHECK(series.ratio[0][1] == doctest::Approx(0.25));

  // Checkpoint 2 (iteration 20): only run 0 alive.
  CHECK(series.excess[1][1] == 0.0);  // run 1 finished at 15
  CHECK(series.ratio[1].size() == 1);
  CHECK(series.ratio_delta[1].size() == 1);
  // Incremental ratio over the second window: (2-1)/(5-2).
  CHECK(series.ratio_delta[1][0] == doctest::Approx(1.0 / 3.0));

  const auto mean_eps = series.mean_excess();
  CHECK(mean_eps[0] == doctest::Approx(50.0 / 3.0));
}
