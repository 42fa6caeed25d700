#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "btiepi/bti.hpp"
#include "btiepi/cost.hpp"
#include "btiepi/schedule.hpp"

namespace btiepi {

/// All 2^T vertices (u, DCU(u)) of the epigraph.
struct VertexSet {
  int periods = 0;
  std::vector<Schedule> schedules;
  std::vector<double> costs;
};

inline constexpr int kVertexEnumerationCap = 20;

VertexSet enumerate_vertices(const StartupCost& cost, const TimeGrid& grid);

/// One BTI per rank-labeled tree, in enumeration order (Catalan-many).
std::vector<BTICut> all_tree_cuts(const StartupCost& cost, const TimeGrid& grid,
                                  int cap = kTreeEnumerationCap);

/// Brute-force envelope: max of a_B . u over every tree. Independent check of the
/// Cartesian-tree separation path.
double max_rhs_over_trees(std::span<const double> u, const StartupCost& cost,
                          const TimeGrid& grid, int cap = kTreeEnumerationCap);

struct FacetCensus {
  std::uint64_t tree_count = 0;  // C_T
  int distinct_btis = 0;
  int facet_confirmed = 0;  // distinct cuts tight at T+1 affinely independent points
  std::vector<std::vector<std::string>> duplicates;  // groups of trees sharing coefficients
  int trivial_facets = 0;                            // 2T, from 0 <= u_t <= 1
  std::uint64_t total_facets = 0;                    // distinct + 2T
};

inline constexpr int kCensusCap = 9;

/// Counts pairwise-distinct BTI coefficient vectors (componentwise tolerance 1e-9) and
/// confirms facet status of each against the enumerated vertices. `jobs` caps the
/// worker threads of the confirmation sweep; results do not depend on it.
FacetCensus facet_census(const StartupCost& cost, const TimeGrid& grid, int jobs = 1);

struct ValidityReport {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::string first_counterexample;
  bool ok() const { return violations == 0; }
};

/// Every tree x every binary schedule: DCU(u) >= a_B . u.
ValidityReport verify_validity(const StartupCost& cost, const TimeGrid& grid, int jobs = 1);

struct EqualityReport {
  std::uint64_t checks = 0;
  std::uint64_t if_violations = 0;       // predicate holds but the BTI is not tight
  std::uint64_t only_if_violations = 0;  // tight although the predicate fails
  std::string first_counterexample;
  bool ok() const { return if_violations == 0 && only_if_violations == 0; }
};

/// Tightness characterization: a vertex is tight for the BTI of B iff u = 0 or the
/// subgraph induced by its 1-entries is a tree containing root(B). The "only if"
/// direction requires strictly concave cost.
EqualityReport verify_equality_characterization(const StartupCost& cost, const TimeGrid& grid,
                                                int jobs = 1);

struct IrredundancyReport {
  std::uint64_t ordered_pairs = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

inline constexpr int kIrredundancyCap = 7;

/// For every ordered pair of distinct trees, exhibits a vertex tight for the first
/// BTI and slack for the second. Requires strictly concave cost.
IrredundancyReport verify_irredundancy(const StartupCost& cost, const TimeGrid& grid);

/// True when the subgraph of `tree` induced by the 1-entries of u is empty or a tree
/// containing the root (equivalently: every online period's parent is online).
bool induced_subgraph_is_rooted_tree(const RankTree& tree, const Schedule& u);

/// Membership of (u, c) in conv(vertices) + cone(e_{T+1}), decided by an LP
/// feasibility check over the convex multipliers.
bool epigraph_member_lp(std::span<const double> u, double c_sigma, const VertexSet& vertices);

struct HrepReport {
  int samples = 0;
  int mismatches = 0;
  std::string first_mismatch;
  bool ok() const { return mismatches == 0; }
};

/// Random points kept away from the boundary: c >= max over trees of a_B . u must
/// coincide with hull membership.
HrepReport verify_hrep_completeness(const StartupCost& cost, const TimeGrid& grid, int samples,
                                    std::uint64_t seed);

}  // namespace btiepi
