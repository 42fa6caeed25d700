#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "btiepi/schedule.hpp"
#include "test_util.hpp"

using namespace btiepi;

TEST_CASE("schedule parsing and round trip") {
  const Schedule u = Schedule::from_string("0111100010");
  CHECK(u.periods() == 10);
  CHECK(u.to_string() == "0111100010");
  CHECK_FALSE(u.on(1));
  CHECK(u.on(2));
  CHECK_THROWS_AS(Schedule::from_string("01x"), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::from_string(""), std::invalid_argument);
}

TEST_CASE("offline run counts") {
  const Schedule u = Schedule::from_string("0111100010");
  CHECK(offline_before(u, 9) == 3);
  CHECK(offline_before(u, 1) == 0);
  CHECK(offline_before(u, 2) == 1);
  CHECK(offline_before(u, 3) == 0);
  CHECK(offline_before(Schedule::from_string("0001"), 4) == 3);

  const Schedule lifting = Schedule::from_string("010001000010");
  CHECK(offline_after(lifting, 6) == 4);
  CHECK(offline_after(lifting, 12) == 0);
  CHECK(offline_after(Schedule::from_string("100"), 1) == 2);
}

TEST_CASE("per-period and summed start-up costs") {
  const TimeGrid grid = TimeGrid::uniform(10, 1.0, 2.0);
  const StartupCost cost = testutil::exp_cost();
  const Schedule u = Schedule::from_string("0111100010");
  CHECK(dcu_t(cost, grid, u, 2) == doctest::Approx(cost.eval(3.0)));
  CHECK(dcu_t(cost, grid, u, 5) == 0.0);
  CHECK(dcu_t(cost, grid, u, 9) == doctest::Approx(cost.eval(3.0)));
  CHECK(dcu_sum(cost, grid, u) == doctest::Approx(2.0 * cost.eval(3.0)));

  CHECK(dcu_sum(cost, grid, Schedule::zeros(10)) == 0.0);

  // A single start-up after the full preceding offline run.
  for (int t = 1; t <= 10; ++t) {
    Schedule e = Schedule::zeros(10);
    e.set(t, true);
    CHECK(dcu_sum(cost, grid, e) == doctest::Approx(discrete_cost(cost, grid, t, t - 1)));
  }

  // All-ones schedule with no pre-model offline time costs nothing.
  const TimeGrid cold(std::vector<double>(5, 1.0), 0.0);
  Schedule ones = Schedule::zeros(5);
  for (int t = 1; t <= 5; ++t) ones.set(t, true);
  CHECK(dcu_sum(cost, cold, ones) == 0.0);
}

TEST_CASE("delta_sum edge branches") {
  const TimeGrid grid = TimeGrid::uniform(6, 1.0, 2.0);
  const StartupCost cost = testutil::exp_cost();
  for (int t = 1; t <= 6; ++t)
    for (int l = 0; l <= t - 1; ++l)
      CHECK(delta_sum(cost, grid, t, l, 6 - t) == doctest::Approx(discrete_cost(cost, grid, t, l)));
  // Switching on between two online neighbours saves the neighbour's start-up.
  for (int t = 2; t <= 5; ++t)
    CHECK(delta_sum(cost, grid, t, 0, 0) == doctest::Approx(-discrete_cost(cost, grid, t + 1, 1)));
  CHECK_THROWS_AS(delta_sum(cost, grid, 3, 3, 0), std::domain_error);
  CHECK_THROWS_AS(delta_sum(cost, grid, 3, 0, 4), std::domain_error);
}

TEST_CASE("delta_sum equals the brute-force cost change (exhaustive)") {
  std::mt19937_64 rng(3);
  for (int T = 1; T <= 8; ++T) {
    const TimeGrid grid = testutil::random_grid(T, rng);
    const StartupCost cost = testutil::exp_cost();
    for (std::uint32_t mask = 0; mask < (1u << T); ++mask) {
      const Schedule u = testutil::schedule_from_mask(T, mask);
      for (int t = 1; t <= T; ++t) {
        if (u.on(t)) continue;
        Schedule v = u;
        v.set(t, true);
        const double change = dcu_sum(cost, grid, v) - dcu_sum(cost, grid, u);
        const double expected =
            delta_sum(cost, grid, t, offline_before(v, t), offline_after(v, t));
        CHECK(change == doctest::Approx(expected).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("delta_sum monotone in l and r") {
  const StartupCost exp_cost = testutil::exp_cost();
  const StartupCost table = testutil::table_cost();
  const TimeGrid grid = TimeGrid::uniform(12, 1.0, 2.0);
  for (int t = 1; t <= 12; ++t) {
    for (int l = 0; l <= t - 1; ++l) {
      for (int r = 0; r <= 12 - t; ++r) {
        if (l + 1 <= t - 1) {
          CHECK(delta_sum(exp_cost, grid, t, l + 1, r) > delta_sum(exp_cost, grid, t, l, r));
          CHECK(delta_sum(table, grid, t, l + 1, r) >= delta_sum(table, grid, t, l, r) - 1e-12);
        }
        if (r + 1 <= 12 - t) {
          CHECK(delta_sum(exp_cost, grid, t, l, r + 1) > delta_sum(exp_cost, grid, t, l, r));
          CHECK(delta_sum(table, grid, t, l, r + 1) >= delta_sum(table, grid, t, l, r) - 1e-12);
        }
      }
    }
  }
}

TEST_CASE("dcu_sum is nonnegative") {
  std::mt19937_64 rng(17);
  const StartupCost cost = testutil::exp_cost();
  for (int T = 1; T <= 6; ++T) {
    const TimeGrid grid = testutil::random_grid(T, rng);
    for (std::uint32_t mask = 0; mask < (1u << T); ++mask)
      CHECK(dcu_sum(cost, grid, testutil::schedule_from_mask(T, mask)) >= 0.0);
  }
}
