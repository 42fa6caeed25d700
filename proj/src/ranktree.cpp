#include "btiepi/ranktree.hpp"

#include <cctype>
#include <stdexcept>

namespace btiepi {

std::vector<int> RankTree::parents() const {
  std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
  for (int t = 1; t <= n; ++t) {
    if (left[t]) p[left[t]] = t;
    if (right[t]) p[right[t]] = t;
  }
  return p;
}

TreeCheck validate(const RankTree& tree) {
  const int n = tree.n;
  if (n < 1) return {false, 0, "tree must have at least one node"};
  if (static_cast<int>(tree.left.size()) != n + 1 || static_cast<int>(tree.right.size()) != n + 1)
    return {false, 0, "child arrays must have n + 1 entries"};
  if (tree.root < 1 || tree.root > n) return {false, tree.root, "root index out of range"};

  std::vector<int> parent_count(static_cast<std::size_t>(n) + 1, 0);
  for (int t = 1; t <= n; ++t) {
    for (int c : {tree.left[t], tree.right[t]}) {
      if (c == 0) continue;
      if (c < 1 || c > n) return {false, t, "child index out of range"};
      if (c == t) return {false, t, "node is its own child"};
      if (++parent_count[c] > 1) return {false, c, "node has two parents"};
    }
  }
  if (parent_count[tree.root] != 0) return {false, tree.root, "root has a parent"};
  for (int t = 1; t <= n; ++t)
    if (t != tree.root && parent_count[t] == 0) return {false, t, "node unreachable from root"};

  // In-order traversal must visit 1..n in order; this is exactly the rank labeling.
  std::vector<int> stack;
  stack.reserve(static_cast<std::size_t>(n));
  int expected = 1;
  int node = tree.root;
  while (node != 0 || !stack.empty()) {
    while (node != 0) {
      stack.push_back(node);
      node = tree.left[node];
      if (static_cast<int>(stack.size()) > n) return {false, node, "cycle through left children"};
    }
    node = stack.back();
    stack.pop_back();
    if (node != expected)
      return {false, node, "in-order rank mismatch (expected " + std::to_string(expected) + ")"};
    ++expected;
    node = tree.right[node];
  }
  if (expected != n + 1) return {false, 0, "in-order traversal incomplete"};
  return {};
}

SubtreeSizes subtree_sizes(const RankTree& tree) {
  const int n = tree.n;
  SubtreeSizes s;
  s.left.assign(static_cast<std::size_t>(n) + 1, 0);
  s.right.assign(static_cast<std::size_t>(n) + 1, 0);
  s.total.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int t = 1; t <= n; ++t)
    if (tree.left[t]) s.left[t] = s.left[tree.left[t]] + t - tree.left[t];
  for (int t = n; t >= 1; --t) {
    if (tree.right[t]) s.right[t] = tree.right[t] - t + s.right[tree.right[t]];
    s.total[t] = s.left[t] + 1 + s.right[t];
  }
  return s;
}

TopNodes top_nodes(const RankTree& tree) {
  TopNodes out;
  for (int t = tree.root; t != 0; t = tree.left[t]) out.top_left.push_back(t);
  for (int t = tree.root; t != 0; t = tree.right[t]) out.top_right.push_back(t);
  return out;
}

RankTree find_cartesian_tree(std::span<const double> u, CartesianStats* stats) {
  const int n = static_cast<int>(u.size());
  if (n < 1) throw std::invalid_argument("cartesian tree: empty vector");
  RankTree tree(n);
  std::vector<int> spine;
  spine.reserve(static_cast<std::size_t>(n));
  CartesianStats local;
  for (int t = 1; t <= n; ++t) {
    int last_popped = 0;
    while (!spine.empty() && u[static_cast<std::size_t>(spine.back() - 1)] < u[static_cast<std::size_t>(t - 1)]) {
      last_popped = spine.back();
      spine.pop_back();
      ++local.pops;
    }
    if (last_popped) tree.left[t] = last_popped;
    if (!spine.empty()) tree.right[spine.back()] = t;
    spine.push_back(t);
    ++local.pushes;
  }
  tree.root = spine.front();
  if (stats) *stats = local;
  return tree;
}

bool is_cartesian_for(const RankTree& tree, std::span<const double> u) {
  if (static_cast<int>(u.size()) != tree.n)
    throw std::invalid_argument("is_cartesian_for: length mismatch");
  const auto parent = tree.parents();
  for (int t = 1; t <= tree.n; ++t) {
    if (t == tree.root) continue;
    if (u[static_cast<std::size_t>(t - 1)] > u[static_cast<std::size_t>(parent[t] - 1)]) return false;
  }
  return true;
}

void for_each_tree(int n, const std::function<void(const RankTree&)>& visit, int cap) {
  if (n < 1) throw std::invalid_argument("tree enumeration: n must be >= 1");
  if (n > cap)
    throw std::invalid_argument("tree enumeration: n = " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(cap));
  RankTree tree(n);
  // Chooses the root k of [a, b], then enumerates left and right subtrees via
  // continuation passing so every combination is visited once.
  std::function<void(int, int, int*, const std::function<void()>&)> build =
      [&](int a, int b, int* slot, const std::function<void()>& next) {
        if (a > b) {
          *slot = 0;
          next();
          return;
        }
        for (int k = a; k <= b; ++k) {
          *slot = k;
          build(a, k - 1, &tree.left[k], [&, k]() { build(k + 1, b, &tree.right[k], next); });
        }
      };
  build(1, n, &tree.root, [&]() { visit(tree); });
}

std::vector<RankTree> enumerate_trees(int n, int cap) {
  std::vector<RankTree> out;
  out.reserve(n <= 12 ? static_cast<std::size_t>(catalan(n)) : 0);
  for_each_tree(n, [&](const RankTree& t) { out.push_back(t); }, cap);
  return out;
}

RankTree mirror(const RankTree& tree) {
  const int n = tree.n;
  RankTree out(n);
  out.root = n + 1 - tree.root;
  for (int t = 1; t <= n; ++t) {
    const int m = n + 1 - t;
    out.left[m] = tree.right[t] ? n + 1 - tree.right[t] : 0;
    out.right[m] = tree.left[t] ? n + 1 - tree.left[t] : 0;
  }
  return out;
}

namespace {

void format_node(const RankTree& tree, int t, std::string& out) {
  out.push_back('(');
  if (tree.left[t]) {
    format_node(tree, tree.left[t], out);
    out.push_back(' ');
  }
  out += std::to_string(t);
  if (tree.right[t]) {
    out.push_back(' ');
    format_node(tree, tree.right[t], out);
  }
  out.push_back(')');
}

struct TreeParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw std::invalid_argument("tree parse: expected '" + std::string(1, c) + "'");
    ++pos;
  }
  int number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("tree parse: expected a node label");
    return std::stoi(text.substr(start, pos - start));
  }

  // node := '(' [node] label [node] ')'
  int parse_node(std::vector<std::pair<int, int>>& children, std::vector<int>& labels) {
    expect('(');
    int left = 0;
    if (peek() == '(') left = parse_node(children, labels);
    int label = number();
    int right = 0;
    if (peek() == '(') right = parse_node(children, labels);
    expect(')');
    labels.push_back(label);
    children.push_back({left, right});
    return label;
  }
};

}  // namespace

std::string format_tree(const RankTree& tree) {
  if (tree.n < 1) return "()";
  std::string out;
  format_node(tree, tree.root, out);
  return out;
}

RankTree parse_tree(const std::string& text) {
  TreeParser parser{text};
  std::vector<std::pair<int, int>> children;
  std::vector<int> labels;
  int root = parser.parse_node(children, labels);
  parser.skip_ws();
  if (parser.pos != text.size()) throw std::invalid_argument("tree parse: trailing input");

  const int n = static_cast<int>(labels.size());
  RankTree tree(n);
  tree.root = root;
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    int t = labels[k];
    if (t < 1 || t > n || seen[static_cast<std::size_t>(t)])
      throw std::invalid_argument("tree parse: labels must be a permutation of 1..n");
    seen[static_cast<std::size_t>(t)] = true;
    tree.left[t] = children[k].first;
    tree.right[t] = children[k].second;
  }
  return tree;
}

std::uint64_t catalan(int n) {
  if (n < 0 || n > 30) throw std::invalid_argument("catalan: n out of supported range");
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j < k; ++j) c[k] += c[j] * c[k - 1 - j];
  return c[static_cast<std::size_t>(n)];
}

}  // namespace btiepi
