#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "btiepi/bti.hpp"
#include "btiepi/oracle.hpp"
#include "btiepi/schedule.hpp"
#include "test_util.hpp"

using namespace btiepi;

namespace {

RankTree tree_of(const std::string& text) { return parse_tree(text); }

}  // namespace

TEST_CASE("subtree offline lengths") {
  // Leaf away from the boundary spans nothing but its own period.
  const TimeGrid grid = TimeGrid::uniform(4, 1.0, 2.0);
  const RankTree t = tree_of("((1) 2 ((3) 4))");
  const SubtreeOfflineLengths len = subtree_offline_lengths(t, grid);
  CHECK(len.left[3] == 0.0);
  CHECK(len.right[3] == 0.0);
  CHECK(len.principal[3] == doctest::Approx(1.0));

  // Left subtree reaching period 1 includes the pre-model offline time.
  const TimeGrid two = TimeGrid::uniform(2, 1.0, 2.0);
  const SubtreeOfflineLengths root2 = subtree_offline_lengths(tree_of("((1) 2)"), two);
  CHECK(root2.left[2] == doctest::Approx(3.0));
}

TEST_CASE("subtree offline lengths match the definitional sums") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 8);
    const TimeGrid grid = testutil::random_grid(T, rng);
    for_each_tree(T, [&](const RankTree& tree) {
      const SubtreeSizes sizes = subtree_sizes(tree);
      const SubtreeOfflineLengths len = subtree_offline_lengths(tree, grid);
      for (int t = 1; t <= T; ++t) {
        CHECK(len.left[t] == doctest::Approx(grid.offline_length(t, sizes.left[t])).epsilon(1e-12));
        double right = 0.0;
        for (int j = t + 1; j <= t + sizes.right[t]; ++j) right += grid.delta(j);
        CHECK(len.right[t] == doctest::Approx(right).epsilon(1e-12));
        CHECK(len.principal[t] ==
              doctest::Approx(len.left[t] + grid.delta(t) + len.right[t]).epsilon(1e-12));
      }
    });
  }
}

TEST_CASE("coefficients for tiny grids") {
  const StartupCost cost = testutil::exp_cost();

  const TimeGrid one = TimeGrid::uniform(1, 1.0, 2.0);
  const BTICut single = coefficients(tree_of("(1)"), cost, one);
  CHECK(single.coefficients[0] == doctest::Approx(cost.eval(2.0)));

  const TimeGrid two = TimeGrid::uniform(2, 1.0, 2.0);
  const BTICut spine = coefficients(tree_of("(1 (2))"), cost, two);
  CHECK(spine.coefficients[0] == doctest::Approx(cost.eval(2.0)));
  CHECK(spine.coefficients[1] == 0.0);

  const BTICut rooted = coefficients(tree_of("((1) 2)"), cost, two);
  CHECK(rooted.coefficients[0] == doctest::Approx(cost.eval(2.0) - cost.eval(3.0)));
  CHECK(rooted.coefficients[1] == doctest::Approx(cost.eval(3.0)));
}

TEST_CASE("coefficients equal delta_sum at the subtree sizes") {
  // Integer grids make both arithmetic paths exact, so equality is bitwise.
  const TimeGrid grid = TimeGrid::uniform(8, 1.0, 2.0);
  const StartupCost cost = testutil::exp_cost();
  for_each_tree(8, [&](const RankTree& tree) {
    const SubtreeSizes sizes = subtree_sizes(tree);
    const BTICut cut = coefficients(tree, cost, grid);
    for (int t = 1; t <= 8; ++t)
      CHECK(cut.coefficients[t - 1] == delta_sum(cost, grid, t, sizes.left[t], sizes.right[t]));
  });

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 7);
    const TimeGrid random = testutil::random_grid(T, rng);
    for_each_tree(T, [&](const RankTree& tree) {
      const SubtreeSizes sizes = subtree_sizes(tree);
      const BTICut cut = coefficients(tree, cost, random);
      for (int t = 1; t <= T; ++t)
        CHECK(cut.coefficients[t - 1] ==
              doctest::Approx(delta_sum(cost, random, t, sizes.left[t], sizes.right[t]))
                  .epsilon(1e-12));
    });
  }
}

TEST_CASE("envelope basics") {
  const StartupCost cost = testutil::exp_cost();
  const TimeGrid grid = TimeGrid::uniform(5, 1.0, 2.0);
  CHECK(envelope(std::vector<double>(5, 0.0), cost, grid).value == 0.0);
  CHECK_THROWS_AS(envelope(std::vector<double>{0.5, 1.2, 0.0, 0.0, 0.0}, cost, grid),
                  std::domain_error);
  CHECK_THROWS_AS(envelope(std::vector<double>{-0.5, 0.2, 0.0, 0.0, 0.0}, cost, grid),
                  std::domain_error);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> u = testutil::random_point(5, rng);
    const EnvelopeResult res = envelope(u, cost, grid);
    CHECK(is_cartesian_for(res.cut.source_tree, u));
    CHECK(res.value == doctest::Approx(res.cut.rhs_at(u)));
    // Homogeneity.
    const double alpha = 0.25 + 0.5 * (trial % 3);
    std::vector<double> scaled = u;
    for (double& v : scaled) v = std::min(1.0, alpha * v);
    if (alpha <= 1.0) {
      std::vector<double> exact = u;
      for (double& v : exact) v *= alpha;
      CHECK(envelope(exact, cost, grid).value == doctest::Approx(alpha * res.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("envelope against binary schedules") {
  std::mt19937_64 rng(31);
  const StartupCost cost = testutil::exp_cost();
  for (int T = 1; T <= 8; ++T) {
    const TimeGrid grid = testutil::random_grid(T, rng);
    for (std::uint32_t mask = 0; mask < (1u << T); ++mask) {
      const Schedule sched = testutil::schedule_from_mask(T, mask);
      std::vector<double> u(static_cast<std::size_t>(T));
      for (int t = 1; t <= T; ++t) u[t - 1] = sched.on(t) ? 1.0 : 0.0;
      const EnvelopeResult res = envelope(u, cost, grid);
      const double exact = dcu_sum(cost, grid, sched);
      // The envelope matches the schedule cost at binary points and never exceeds it.
      CHECK(res.value <= exact + 1e-9);
      CHECK(res.value == doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("envelope equals the maximum over all trees") {
  std::mt19937_64 rng(41);
  const StartupCost cost = testutil::exp_cost();
  for (int T = 1; T <= 9; ++T) {
    const TimeGrid grid = testutil::random_grid(T, rng);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<double> u = testutil::random_point(T, rng);
      if (trial % 3 == 0)  // exercise ties
        for (double& v : u) v = std::round(v * 4.0) / 4.0;
      const double fast = envelope(u, cost, grid).value;
      const double brute = max_rhs_over_trees(u, cost, grid);
      CHECK(fast == doctest::Approx(brute).epsilon(1e-9));
    }
  }
}

TEST_CASE("envelope consistency with the convex-combination LP") {
  std::mt19937_64 rng(53);
  const StartupCost cost = testutil::exp_cost();
  for (int T = 2; T <= 6; ++T) {
    const TimeGrid grid = testutil::random_grid(T, rng);
    const VertexSet vs = enumerate_vertices(cost, grid);
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<double> u = testutil::random_point(T, rng);
      const double value = envelope(u, cost, grid).value;
      // (u, value) must be a hull member, (u, value - margin) must not.
      CHECK(epigraph_member_lp(u, value + 1e-7, vs));
      CHECK_FALSE(epigraph_member_lp(u, value - 1e-4 * std::max(1.0, value), vs));
    }
  }
}

TEST_CASE("separation") {
  const StartupCost cost = testutil::exp_cost();
  const TimeGrid grid = TimeGrid::uniform(2, 1.0, 2.0);

  // Both periods online, zero claimed cost: the right-spine BTI cuts it off.
  const Separation sep = separate(std::vector<double>{1.0, 1.0}, 0.0, cost, grid);
  CHECK_FALSE(sep.in_epigraph);
  CHECK(sep.rhs_at_point == doctest::Approx(cost.eval(2.0)));
  CHECK(sep.cut.source_tree == parse_tree("(1 (2))"));
  CHECK(sep.violation == doctest::Approx(cost.eval(2.0)));

  // Any point at or above the envelope is accepted.
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 9);
    const TimeGrid g = testutil::random_grid(T, rng);
    const std::vector<double> u = testutil::random_point(T, rng);
    const double value = envelope(u, cost, g).value;
    CHECK(separate(u, value + 1e-8, cost, g).in_epigraph);
    const Separation cutoff = separate(u, value - 1e-3, cost, g);
    if (value > 1e-3) CHECK_FALSE(cutoff.in_epigraph);
  }

  CHECK_THROWS_AS(separate(std::vector<double>{1.5, 0.0}, 0.0, cost, grid), std::domain_error);
}

TEST_CASE("separation agrees with the brute-force maximum") {
  std::mt19937_64 rng(71);
  const StartupCost cost = testutil::exp_cost();
  for (int T = 1; T <= 9; ++T) {
    const TimeGrid grid = testutil::random_grid(T, rng);
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> u = testutil::random_point(T, rng);
      const double brute = max_rhs_over_trees(u, cost, grid);
      std::uniform_real_distribution<double> off(1e-5, 0.5);
      const double offset = (trial % 2 == 0 ? 1.0 : -1.0) * off(rng) * std::max(1.0, brute);
      const Separation sep = separate(u, brute + offset, cost, grid);
      CHECK(sep.rhs_at_point == doctest::Approx(brute).epsilon(1e-9));
      CHECK(sep.in_epigraph == (offset > 0.0));
    }
  }
}

TEST_CASE("separation operation counter is linear") {
  std::mt19937_64 rng(81);
  const StartupCost cost = testutil::exp_cost();
  for (int T : {100, 1000, 10000}) {
    const TimeGrid grid = TimeGrid::uniform(T, 1.0, 2.0);
    const std::vector<double> u = testutil::random_point(T, rng);
    const Separation sep = separate(u, 1.0, cost, grid);
    CHECK(sep.operations <= 10 * static_cast<long long>(T));
  }
}
