#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "btiepi/cost.hpp"
#include "test_util.hpp"

using namespace btiepi;

TEST_CASE("exponential evaluation") {
  const StartupCost cost = StartupCost::exponential(25.0, 8.0, 0.03);
  CHECK(cost.eval(0.0) == 0.0);
  // 8 + 25 (1 - e^{-0.09})
  CHECK(cost.eval(3.0) == doctest::Approx(10.151720368219294).epsilon(1e-12));
  // supremum V + f
  CHECK(cost.eval(1e9) == doctest::Approx(33.0).epsilon(1e-9));
  CHECK_THROWS_AS(cost.eval(-1e-9), std::domain_error);
  CHECK(cost.strictly_concave());
  CHECK(cost.is_exponential());
  CHECK(cost.exp_curve().heat_loss == 0.03);
}

TEST_CASE("exponential parameter validation") {
  CHECK_THROWS_AS(StartupCost::exponential(0.0, 8.0, 0.03), std::invalid_argument);
  CHECK_THROWS_AS(StartupCost::exponential(25.0, -1.0, 0.03), std::invalid_argument);
  CHECK_THROWS_AS(StartupCost::exponential(25.0, 8.0, 0.0), std::invalid_argument);
}

TEST_CASE("tabulated evaluation and extrapolation") {
  const StartupCost cost = testutil::table_cost();
  CHECK(cost.eval(0.0) == 0.0);
  CHECK(cost.eval(0.5) == doctest::Approx(5.0));
  CHECK(cost.eval(1.0) == doctest::Approx(10.0));
  CHECK(cost.eval(2.0) == doctest::Approx(12.0));
  CHECK(cost.eval(4.0) == doctest::Approx(16.0));
  CHECK(cost.eval(100.0) == doctest::Approx(16.0));  // flat beyond the last breakpoint
  CHECK_THROWS_AS(cost.eval(-0.1), std::domain_error);
  CHECK_FALSE(cost.is_exponential());
}

TEST_CASE("tabulated validation") {
  CHECK_THROWS_AS(StartupCost::tabulated({}), std::invalid_argument);
  CHECK_THROWS_AS(StartupCost::tabulated({{1.0, 0.0}, {2.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(StartupCost::tabulated({{0.0, 0.0}, {1.0, 5.0}, {1.0, 6.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StartupCost::tabulated({{0.0, 0.0}, {1.0, 5.0}, {2.0, 4.0}}),
                  std::invalid_argument);
  // Convex kink gets rejected.
  CHECK_THROWS_AS(StartupCost::tabulated({{0.0, 0.0}, {1.0, 1.0}, {2.0, 4.0}}),
                  std::invalid_argument);
}

TEST_CASE("strict concavity flag") {
  CHECK(testutil::exp_cost().strictly_concave());
  CHECK(testutil::table_cost().strictly_concave());  // slopes 10, 2
  CHECK_FALSE(testutil::linear_cost().strictly_concave());
  // Two equal consecutive slopes.
  CHECK_FALSE(StartupCost::tabulated({{0.0, 0.0}, {1.0, 2.0}, {2.0, 4.0}, {3.0, 5.0}})
                  .strictly_concave());
}

TEST_CASE("cost curves are nonnegative, nondecreasing and concave (sampled)") {
  for (const StartupCost& cost : {testutil::exp_cost(), testutil::table_cost()}) {
    double prev = 0.0;
    for (double L = 0.0; L <= 12.0; L += 0.25) {
      const double v = cost.eval(L);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
    for (double L1 = 0.25; L1 <= 6.0; L1 += 0.5) {
      for (double s = 0.25; s <= 3.0; s += 0.5) {
        const double d1 = cost.eval(L1 + s) - cost.eval(L1);
        const double d2 = cost.eval(2 * L1 + s) - cost.eval(2 * L1);
        CHECK(d1 >= d2 - 1e-12);
      }
    }
  }
}

TEST_CASE("time grid validation") {
  CHECK_THROWS_AS(TimeGrid({}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({1.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({1.0}, -1.0), std::invalid_argument);
  const TimeGrid grid = TimeGrid::uniform(3, 2.0, 1.5);
  CHECK(grid.periods() == 3);
  CHECK(grid.delta(2) == 2.0);
  CHECK(grid.pre_offline() == 1.5);
}

TEST_CASE("offline length") {
  const TimeGrid grid = TimeGrid::uniform(10, 1.0, 2.0);
  CHECK(grid.offline_length(2, 1) == doctest::Approx(3.0));  // delta(1) + pre-offline
  CHECK(grid.offline_length(9, 3) == doctest::Approx(3.0));  // inside the horizon
  CHECK(grid.offline_length(5, 0) == 0.0);
  CHECK(grid.offline_length(1, 0) == doctest::Approx(2.0));  // reaches the model start
  CHECK_THROWS_AS(grid.offline_length(2, 2), std::domain_error);
  CHECK_THROWS_AS(grid.offline_length(2, -1), std::domain_error);
  CHECK_THROWS_AS(grid.offline_length(0, 0), std::domain_error);
}

TEST_CASE("offline length additivity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const TimeGrid grid = testutil::random_grid(8, rng);
    for (int t = 1; t <= 8; ++t) {
      for (int l1 = 0; l1 <= t - 1; ++l1) {
        for (int l2 = 1; l1 + l2 <= t - 1; ++l2) {
          CHECK(grid.offline_length(t, l1 + l2) ==
                doctest::Approx(grid.offline_length(t, l1) + grid.offline_length(t - l1, l2))
                    .epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("offline prefix matches the direct sums") {
  std::mt19937_64 rng(7);
  const TimeGrid grid = testutil::random_grid(9, rng);
  const auto D = grid.offline_prefix();
  for (int t = 1; t <= 9; ++t) CHECK(D[t] == doctest::Approx(grid.offline_length(t, t - 1)));
  CHECK(D[10] == doctest::Approx(D[9] + grid.delta(9)));
}

TEST_CASE("discrete start-up costs") {
  const TimeGrid grid = TimeGrid::uniform(10, 1.0, 2.0);
  const StartupCost cost = testutil::flat_exp_cost();
  CHECK(discrete_cost(cost, grid, 5, 0) == 0.0);
  CHECK(discrete_cost(cost, grid, 2, 1) == doctest::Approx(cost.eval(3.0)));

  // Tabulated case: interpolation at the offline length Delta(3,2) = 2.
  const TimeGrid flat(std::vector<double>{1.0, 1.0, 1.0}, 0.0);
  CHECK(discrete_cost(testutil::table_cost(), flat, 3, 2) == doctest::Approx(12.0));
}
