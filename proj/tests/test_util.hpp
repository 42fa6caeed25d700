#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "btiepi/cost.hpp"
#include "btiepi/schedule.hpp"

namespace btiepi::testutil {

inline StartupCost exp_cost() { return StartupCost::exponential(25.0, 8.0, 0.3); }

inline StartupCost flat_exp_cost() { return StartupCost::exponential(25.0, 8.0, 0.03); }

inline StartupCost table_cost() {
  return StartupCost::tabulated({{0.0, 0.0}, {1.0, 10.0}, {4.0, 16.0}});
}

/// Linear on [0, 100], i.e. concave but not strictly.
inline StartupCost linear_cost() { return StartupCost::tabulated({{0.0, 0.0}, {100.0, 100.0}}); }

inline Schedule schedule_from_mask(int periods, std::uint32_t mask) {
  Schedule u = Schedule::zeros(periods);
  for (int t = 1; t <= periods; ++t)
    if (mask & (1u << (t - 1))) u.set(t, true);
  return u;
}

inline std::vector<double> random_point(int periods, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> u(static_cast<std::size_t>(periods));
  for (double& v : u) v = unit(rng);
  return u;
}

inline TimeGrid random_grid(int periods, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.25, 3.0);
  std::uniform_real_distribution<double> pre(0.0, 5.0);
  std::vector<double> delta(static_cast<std::size_t>(periods));
  for (double& d : delta) d = len(rng);
  return TimeGrid(std::move(delta), rng() % 2 == 0 ? 0.0 : pre(rng));
}

}  // namespace btiepi::testutil
