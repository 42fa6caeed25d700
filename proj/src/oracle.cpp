#include "btiepi/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "btiepi/lp.hpp"

namespace btiepi {

namespace {

constexpr double kTightTol = 1e-9;
constexpr double kCoeffTol = 1e-9;
constexpr double kPivotTol = 1e-9;

Schedule schedule_from_mask(int periods, std::uint32_t mask) {
  Schedule u = Schedule::zeros(periods);
  for (int t = 1; t <= periods; ++t)
    if (mask & (1u << (t - 1))) u.set(t, true);
  return u;
}

double rhs_at_mask(const std::vector<double>& a, std::uint32_t mask) {
  double rhs = 0.0;
  for (std::uint32_t bits = mask; bits;) {
    const int k = std::countr_zero(bits);
    rhs += a[static_cast<std::size_t>(k)];
    bits &= bits - 1;
  }
  return rhs;
}

/// Runs fn(begin, end, worker) over [0, count) split into at most `jobs` chunks.
/// Workers get disjoint index ranges in order, so merges by worker index are
/// deterministic.
template <typename Fn>
void parallel_chunks(std::size_t count, int jobs, Fn&& fn) {
  jobs = std::clamp(jobs, 1, 64);
  if (jobs == 1 || count < 64) {
    fn(std::size_t{0}, count, 0);
    return;
  }
  const std::size_t chunk = (count + jobs - 1) / static_cast<std::size_t>(jobs);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    if (begin >= count) break;
    const std::size_t end = std::min(count, begin + chunk);
    workers.emplace_back([&fn, begin, end, w]() { fn(begin, end, w); });
  }
  for (auto& t : workers) t.join();
}

/// Rank of the difference set {p_k - p_0} by Gaussian elimination with partial pivoting.
int affine_rank(std::vector<std::vector<double>> rows) {
  if (rows.empty()) return 0;
  const std::size_t dim = rows[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < rows.size(); ++col) {
    std::size_t best = row;
    for (std::size_t k = row + 1; k < rows.size(); ++k)
      if (std::abs(rows[k][col]) > std::abs(rows[best][col])) best = k;
    if (std::abs(rows[best][col]) <= kPivotTol) continue;
    std::swap(rows[row], rows[best]);
    for (std::size_t k = row + 1; k < rows.size(); ++k) {
      const double factor = rows[k][col] / rows[row][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < dim; ++c) rows[k][c] -= factor * rows[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

VertexSet enumerate_vertices(const StartupCost& cost, const TimeGrid& grid) {
  const int T = grid.periods();
  if (T > kVertexEnumerationCap)
    throw std::invalid_argument("vertex enumeration: T exceeds the cap of " +
                                std::to_string(kVertexEnumerationCap));
  VertexSet vs;
  vs.periods = T;
  const std::uint32_t count = 1u << T;
  vs.schedules.reserve(count);
  vs.costs.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    Schedule u = schedule_from_mask(T, mask);
    vs.costs.push_back(dcu_sum(cost, grid, u));
    vs.schedules.push_back(std::move(u));
  }
  return vs;
}

std::vector<BTICut> all_tree_cuts(const StartupCost& cost, const TimeGrid& grid, int cap) {
  std::vector<BTICut> cuts;
  for_each_tree(grid.periods(), [&](const RankTree& tree) {
    cuts.push_back(coefficients(tree, cost, grid));
  }, cap);
  return cuts;
}

double max_rhs_over_trees(std::span<const double> u, const StartupCost& cost,
                          const TimeGrid& grid, int cap) {
  double best = 0.0;
  bool first = true;
  for_each_tree(grid.periods(), [&](const RankTree& tree) {
    const double rhs = coefficients(tree, cost, grid).rhs_at(u);
    if (first || rhs > best) best = rhs;
    first = false;
  }, cap);
  return best;
}

FacetCensus facet_census(const StartupCost& cost, const TimeGrid& grid, int jobs) {
  const int T = grid.periods();
  if (T > kCensusCap)
    throw std::invalid_argument("facet census: T exceeds the cap of " + std::to_string(kCensusCap));

  const std::vector<BTICut> cuts = all_tree_cuts(cost, grid);
  FacetCensus census;
  census.tree_count = catalan(T);
  census.trivial_facets = 2 * T;

  // Group coefficient vectors: lexicographic sort, then merge neighbors that agree
  // componentwise within tolerance.
  std::vector<std::size_t> order(cuts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cuts[a].coefficients < cuts[b].coefficients;
  });
  auto same = [&](std::size_t a, std::size_t b) {
    for (int t = 0; t < T; ++t)
      if (std::abs(cuts[a].coefficients[t] - cuts[b].coefficients[t]) > kCoeffTol) return false;
    return true;
  };

  const VertexSet vs = enumerate_vertices(cost, grid);
  std::vector<std::size_t> representatives;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t j = k + 1;
    while (j < order.size() && same(order[k], order[j])) ++j;
    representatives.push_back(order[k]);
    if (j - k > 1) {
      std::vector<std::string> group;
      for (std::size_t i = k; i < j; ++i) group.push_back(format_tree(cuts[order[i]].source_tree));
      census.duplicates.push_back(std::move(group));
    }
    k = j;
  }
  census.distinct_btis = static_cast<int>(representatives.size());

  std::vector<int> confirmed(representatives.size(), 0);
  parallel_chunks(representatives.size(), jobs, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto& a = cuts[representatives[r]].coefficients;
      std::vector<std::vector<double>> tight_points;
      for (std::size_t v = 0; v < vs.schedules.size(); ++v) {
        double rhs = 0.0;
        for (int t = 1; t <= T; ++t)
          if (vs.schedules[v].on(t)) rhs += a[static_cast<std::size_t>(t - 1)];
        if (std::abs(vs.costs[v] - rhs) <= kTightTol) {
          std::vector<double> point(static_cast<std::size_t>(T) + 1);
          for (int t = 1; t <= T; ++t) point[t - 1] = vs.schedules[v].on(t) ? 1.0 : 0.0;
          point[T] = vs.costs[v];
          tight_points.push_back(std::move(point));
        }
      }
      if (tight_points.size() < static_cast<std::size_t>(T) + 1) continue;
      std::vector<std::vector<double>> diffs;
      diffs.reserve(tight_points.size() - 1);
      for (std::size_t k = 1; k < tight_points.size(); ++k) {
        std::vector<double> d(tight_points[k]);
        for (std::size_t c = 0; c <= static_cast<std::size_t>(T); ++c) d[c] -= tight_points[0][c];
        diffs.push_back(std::move(d));
      }
      if (affine_rank(std::move(diffs)) == T) confirmed[r] = 1;
    }
  });
  for (int c : confirmed) census.facet_confirmed += c;
  census.total_facets = static_cast<std::uint64_t>(census.distinct_btis) + 2u * T;
  return census;
}

ValidityReport verify_validity(const StartupCost& cost, const TimeGrid& grid, int jobs) {
  const int T = grid.periods();
  if (T > 8) throw std::invalid_argument("validity sweep: T exceeds the cap of 8");
  const VertexSet vs = enumerate_vertices(cost, grid);
  const std::vector<RankTree> trees = enumerate_trees(T);
  std::vector<ValidityReport> partial(64);
  parallel_chunks(trees.size(), jobs, [&](std::size_t begin, std::size_t end, int worker) {
    ValidityReport& report = partial[static_cast<std::size_t>(worker)];
    for (std::size_t k = begin; k < end; ++k) {
      const BTICut cut = coefficients(trees[k], cost, grid);
      for (std::uint32_t mask = 0; mask < vs.schedules.size(); ++mask) {
        ++report.checks;
        const double rhs = rhs_at_mask(cut.coefficients, mask);
        if (vs.costs[mask] < rhs - kTightTol) {
          ++report.violations;
          if (report.first_counterexample.empty())
            report.first_counterexample =
                format_tree(trees[k]) + " at " + vs.schedules[mask].to_string();
        }
      }
    }
  });
  ValidityReport merged;
  for (const ValidityReport& r : partial) {
    merged.checks += r.checks;
    merged.violations += r.violations;
    if (merged.first_counterexample.empty()) merged.first_counterexample = r.first_counterexample;
  }
  return merged;
}

bool induced_subgraph_is_rooted_tree(const RankTree& tree, const Schedule& u) {
  if (u.periods() != tree.n) throw std::invalid_argument("induced subgraph: length mismatch");
  const auto parent = tree.parents();
  bool any = false;
  for (int t = 1; t <= tree.n; ++t) {
    if (!u.on(t)) continue;
    any = true;
    if (t != tree.root && !u.on(parent[t])) return false;
  }
  // When all online parents are online too, the root is reached by every chain.
  return !any || u.on(tree.root);
}

EqualityReport verify_equality_characterization(const StartupCost& cost, const TimeGrid& grid,
                                                int jobs) {
  const int T = grid.periods();
  if (T > 8) throw std::invalid_argument("equality characterization: T exceeds the cap of 8");
  const VertexSet vs = enumerate_vertices(cost, grid);
  const std::vector<RankTree> trees = enumerate_trees(T);
  std::vector<EqualityReport> partial(64);
  parallel_chunks(trees.size(), jobs, [&](std::size_t begin, std::size_t end, int worker) {
    EqualityReport& report = partial[static_cast<std::size_t>(worker)];
    for (std::size_t k = begin; k < end; ++k) {
      const BTICut cut = coefficients(trees[k], cost, grid);
      for (std::uint32_t mask = 0; mask < vs.schedules.size(); ++mask) {
        ++report.checks;
        const double rhs = rhs_at_mask(cut.coefficients, mask);
        const bool tight = std::abs(vs.costs[mask] - rhs) <= kTightTol;
        const bool predicate = induced_subgraph_is_rooted_tree(trees[k], vs.schedules[mask]);
        if (predicate && !tight) ++report.if_violations;
        if (tight && !predicate) ++report.only_if_violations;
        if (tight != predicate && report.first_counterexample.empty())
          report.first_counterexample =
              format_tree(trees[k]) + " at " + vs.schedules[mask].to_string();
      }
    }
  });
  EqualityReport merged;
  for (const EqualityReport& r : partial) {
    merged.checks += r.checks;
    merged.if_violations += r.if_violations;
    merged.only_if_violations += r.only_if_violations;
    if (merged.first_counterexample.empty()) merged.first_counterexample = r.first_counterexample;
  }
  return merged;
}

IrredundancyReport verify_irredundancy(const StartupCost& cost, const TimeGrid& grid) {
  const int T = grid.periods();
  if (T > kIrredundancyCap)
    throw std::invalid_argument("irredundancy: T exceeds the cap of " +
                                std::to_string(kIrredundancyCap));
  if (!cost.strictly_concave())
    throw std::invalid_argument("irredundancy: requires a strictly concave cost");

  const std::vector<RankTree> trees = enumerate_trees(T);
  std::vector<BTICut> cuts;
  cuts.reserve(trees.size());
  for (const auto& tree : trees) cuts.push_back(coefficients(tree, cost, grid));

  std::vector<std::vector<int>> parents;
  std::vector<std::vector<int>> depths;
  parents.reserve(trees.size());
  depths.reserve(trees.size());
  for (const auto& tree : trees) {
    auto p = tree.parents();
    std::vector<int> d(static_cast<std::size_t>(T) + 1, 0);
    // Parents precede children in depth order when walked from each node upward.
    for (int t = 1; t <= T; ++t) {
      int depth = 0;
      for (int v = t; v != tree.root; v = p[v]) ++depth;
      d[t] = depth;
    }
    parents.push_back(std::move(p));
    depths.push_back(std::move(d));
  }

  IrredundancyReport report;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = 0; j < trees.size(); ++j) {
      if (i == j) continue;
      ++report.ordered_pairs;
      Schedule witness = Schedule::zeros(T);
      if (trees[i].root != trees[j].root) {
        witness.set(trees[i].root, true);
      } else {
        // Lowest-depth edge {t, parent_i(t)} missing from tree j; online the path
        // from root to parent_i(t) plus t itself.
        int chosen = 0;
        for (int t = 1; t <= T; ++t) {
          if (t == trees[i].root) continue;
          const int p1 = parents[i][t];
          const bool in_j = parents[j][t] == p1 || parents[j][p1] == t;
          if (in_j) continue;
          if (chosen == 0 || depths[i][t] < depths[i][chosen]) chosen = t;
        }
        if (chosen == 0) {
          ++report.failures;
          if (report.first_failure.empty())
            report.first_failure = "identical edge sets: " + format_tree(trees[i]);
          continue;
        }
        witness.set(chosen, true);
        for (int v = parents[i][chosen]; v != trees[i].root; v = parents[i][v]) witness.set(v, true);
        witness.set(trees[i].root, true);
      }
      std::vector<double> u(static_cast<std::size_t>(T));
      for (int t = 1; t <= T; ++t) u[t - 1] = witness.on(t) ? 1.0 : 0.0;
      const double value = dcu_sum(cost, grid, witness);
      const bool tight_i = std::abs(value - cuts[i].rhs_at(u)) <= kTightTol;
      const bool slack_j = value - cuts[j].rhs_at(u) > kTightTol;
      if (!tight_i || !slack_j) {
        ++report.failures;
        if (report.first_failure.empty())
          report.first_failure = format_tree(trees[i]) + " vs " + format_tree(trees[j]) + " at " +
                                 witness.to_string();
      }
    }
  }
  return report;
}

bool epigraph_member_lp(std::span<const double> u, double c_sigma, const VertexSet& vertices) {
  const int T = vertices.periods;
  if (static_cast<int>(u.size()) != T) throw std::invalid_argument("membership: length mismatch");
  LinearProgram lp;
  lp.name = "membership";
  const int count = static_cast<int>(vertices.schedules.size());
  for (int j = 0; j < count; ++j) lp.add_column("a" + std::to_string(j), 0.0, 1.0, 0.0);
  const int mu = lp.add_column("mu", 0.0, kInf, 0.0);
  for (int t = 1; t <= T; ++t) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < count; ++j)
      if (vertices.schedules[j].on(t)) terms.push_back({j, 1.0});
    lp.add_row("ut" + std::to_string(t), std::move(terms), Sense::EQ, u[t - 1]);
  }
  std::vector<std::pair<int, double>> cost_row;
  for (int j = 0; j < count; ++j)
    if (vertices.costs[j] != 0.0) cost_row.push_back({j, vertices.costs[j]});
  cost_row.push_back({mu, 1.0});
  lp.add_row("csum", std::move(cost_row), Sense::EQ, c_sigma);
  std::vector<std::pair<int, double>> convex;
  for (int j = 0; j < count; ++j) convex.push_back({j, 1.0});
  lp.add_row("convex", std::move(convex), Sense::EQ, 1.0);
  return solve_lp(lp).status == SolveStatus::Optimal;
}

HrepReport verify_hrep_completeness(const StartupCost& cost, const TimeGrid& grid, int samples,
                                    std::uint64_t seed) {
  const int T = grid.periods();
  const VertexSet vs = enumerate_vertices(cost, grid);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(1e-4, 0.5);
  HrepReport report;
  report.samples = samples;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> u(static_cast<std::size_t>(T));
    for (double& v : u) v = unit(rng);
    const double max_rhs = max_rhs_over_trees(u, cost, grid);
    const double scale = std::max(1.0, std::abs(max_rhs));
    const bool above = k % 2 == 0;
    const double c_sigma = max_rhs + (above ? 1.0 : -1.0) * magnitude(rng) * scale;
    const bool member = epigraph_member_lp(u, c_sigma, vs);
    if (member != above) {
      ++report.mismatches;
      if (report.first_mismatch.empty()) {
        std::string pt = "(";
        for (double v : u) pt += std::to_string(v) + ",";
        pt += std::to_string(c_sigma) + ")";
        report.first_mismatch = pt;
      }
    }
  }
  return report;
}

}  // namespace btiepi
