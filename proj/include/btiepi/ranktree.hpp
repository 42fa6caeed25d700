#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace btiepi {

/// Binary tree on nodes 1..n whose in-order rank of node t is t itself. Children are
/// stored as index arrays with 0 meaning "no child"; index 0 of each array is unused.
struct RankTree {
  int n = 0;
  int root = 0;
  std::vector<int> left;   // left child of t, or 0
  std::vector<int> right;  // right child of t, or 0

  explicit RankTree(int nodes = 0)
      : n(nodes), left(static_cast<std::size_t>(nodes) + 1, 0),
        right(static_cast<std::size_t>(nodes) + 1, 0) {}

  /// Parent array derived from the child arrays (0 for the root).
  std::vector<int> parents() const;

  bool operator==(const RankTree&) const = default;
};

struct TreeCheck {
  bool ok = true;
  int node = 0;        // first violating node when !ok
  std::string reason;  // human-readable violation
};

/// Confirms structure (single root, unique parents, reachability) and that the
/// in-order traversal visits 1..n in order. Reports the first violation.
TreeCheck validate(const RankTree& tree);

/// Left, right and principal subtree node counts for every node.
struct SubtreeSizes {
  std::vector<int> left;   // lambda(t)
  std::vector<int> right;  // rho(t)
  std::vector<int> total;  // s(t) = lambda(t) + 1 + rho(t)
};

/// Two linear sweeps: lambda ascending (lambda(t) = lambda(l(t)) + t - l(t)),
/// rho descending (rho(t) = r(t) - t + rho(r(t))).
SubtreeSizes subtree_sizes(const RankTree& tree);

struct TopNodes {
  std::vector<int> top_left;   // root, then left children; ends at rank 1
  std::vector<int> top_right;  // root, then right children; ends at rank n
};

TopNodes top_nodes(const RankTree& tree);

struct CartesianStats {
  long long pushes = 0;
  long long pops = 0;
};

/// Builds a Cartesian tree for u (every node's value at most its parent's) with the
/// right-spine stack method: at most one push and one pop per node. Ties do not pop,
/// so among equal values the earlier index becomes the ancestor.
RankTree find_cartesian_tree(std::span<const double> u, CartesianStats* stats = nullptr);

/// True iff u[t] <= u[parent(t)] for every non-root node.
bool is_cartesian_for(const RankTree& tree, std::span<const double> u);

inline constexpr int kTreeEnumerationCap = 12;

/// Visits every rank-labeled binary tree on 1..n exactly once (Catalan-many).
/// Throws std::invalid_argument when n exceeds the cap.
void for_each_tree(int n, const std::function<void(const RankTree&)>& visit,
                   int cap = kTreeEnumerationCap);

std::vector<RankTree> enumerate_trees(int n, int cap = kTreeEnumerationCap);

/// Exchanges left and right children and relabels node t as n + 1 - t.
RankTree mirror(const RankTree& tree);

/// Nested-parenthesis text form "(left root right)", e.g. "((1) 2 (3))".
std::string format_tree(const RankTree& tree);
RankTree parse_tree(const std::string& text);

/// C_n for n <= 30.
std::uint64_t catalan(int n);

}  // namespace btiepi
