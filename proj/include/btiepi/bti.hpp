#pragma once

#include <span>
#include <vector>

#include "btiepi/cost.hpp"
#include "btiepi/ranktree.hpp"

namespace btiepi {

/// A binary tree inequality c >= sum_t a_t u_t. The coefficient of period t is the
/// change of the summed start-up costs when t switches on between the offline runs
/// given by its subtree sizes: a_t = delta_sum(t, lambda(t), rho(t)).
struct BTICut {
  std::vector<double> coefficients;  // a_1..a_T at indices 0..T-1
  RankTree source_tree;

  double rhs_at(std::span<const double> u) const;
};

/// Offline times spanned by the left, right and principal subtree of every node.
/// principal[t] = left[t] + delta(t) + right[t].
struct SubtreeOfflineLengths {
  std::vector<double> left;       // Delta(L(t)), 1-based
  std::vector<double> right;      // Delta(R(t))
  std::vector<double> principal;  // Delta(S(t))
};

SubtreeOfflineLengths subtree_offline_lengths(const RankTree& tree, const TimeGrid& grid);

/// BTI coefficients of a validated tree over the grid:
///   a_t = CU(Delta(L(t))) + CU(Delta(R(t))) - CU(Delta(S(t)))  if t + rho(t) < T,
///   a_t = CU(Delta(L(t)))                                      otherwise.
BTICut coefficients(const RankTree& tree, const StartupCost& cost, const TimeGrid& grid);

struct EnvelopeResult {
  double value;  // LCU(u)
  BTICut cut;    // the certifying Cartesian-tree inequality, tight at u
};

/// Convex-envelope value of the summed start-up costs at fractional u, via the BTI of
/// a Cartesian tree for u. Equals the maximum of a_B . u over all rank-labeled trees.
/// Throws std::domain_error when u leaves [0, 1] by more than 1e-9.
EnvelopeResult envelope(std::span<const double> u, const StartupCost& cost, const TimeGrid& grid);

struct SeparationOptions {
  double violation_tol = 1e-9;
  bool relative = false;  // scale the tolerance by max(1, |c_sigma|)
};

struct Separation {
  bool in_epigraph;
  BTICut cut;            // Cartesian-tree inequality for u
  double rhs_at_point;   // a . u
  double violation;      // a . u - c_sigma (positive when the point is cut off)
  long long operations;  // loop iterations + stack operations, for the O(T) contract
};

/// Exact separation for the epigraph of the summed start-up costs: the point lies in
/// the epigraph iff it satisfies the single BTI of a Cartesian tree for u. O(T).
Separation separate(std::span<const double> u, double c_sigma, const StartupCost& cost,
                    const TimeGrid& grid, const SeparationOptions& opts = {});

}  // namespace btiepi
