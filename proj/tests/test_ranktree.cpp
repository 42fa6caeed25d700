#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "btiepi/ranktree.hpp"
#include "test_util.hpp"

using namespace btiepi;

namespace {

// Root 6; left arm 5-3-1-2, 3-4; right arm 11-10-8-7, 8-9, 11-12.
RankTree twelve_node_tree() {
  RankTree t(12);
  t.root = 6;
  t.left[6] = 5;
  t.left[5] = 3;
  t.left[3] = 1;
  t.right[1] = 2;
  t.right[3] = 4;
  t.right[6] = 11;
  t.left[11] = 10;
  t.left[10] = 8;
  t.left[8] = 7;
  t.right[8] = 9;
  t.right[11] = 12;
  return t;
}

// Root 5; 5-2-1, 2-3, 3-4 on the left; 5-9, 9-7-6, 7-8, 9-11, 11-10 on the right.
RankTree eleven_node_tree() {
  RankTree t(11);
  t.root = 5;
  t.left[5] = 2;
  t.left[2] = 1;
  t.right[2] = 3;
  t.right[3] = 4;
  t.right[5] = 9;
  t.left[9] = 7;
  t.left[7] = 6;
  t.right[7] = 8;
  t.right[9] = 11;
  t.left[11] = 10;
  return t;
}

RankTree right_spine(int n) {
  RankTree t(n);
  t.root = 1;
  for (int k = 1; k < n; ++k) t.right[k] = k + 1;
  return t;
}

}  // namespace

TEST_CASE("validation accepts valid trees") {
  RankTree single(1);
  single.root = 1;
  CHECK(validate(single).ok);
  CHECK(validate(twelve_node_tree()).ok);
  CHECK(validate(eleven_node_tree()).ok);
  CHECK(validate(right_spine(7)).ok);
}

TEST_CASE("validation rejects rank violations") {
  RankTree bad(2);
  bad.root = 1;
  bad.left[1] = 2;  // left subtree must hold smaller ranks
  const TreeCheck check = validate(bad);
  CHECK_FALSE(check.ok);

  RankTree cyclic(2);
  cyclic.root = 1;
  cyclic.right[1] = 2;
  cyclic.left[2] = 1;  // two parents for node 1
  CHECK_FALSE(validate(cyclic).ok);

  RankTree orphan(3);
  orphan.root = 2;
  orphan.left[2] = 1;  // node 3 unreachable
  CHECK_FALSE(validate(orphan).ok);
}

TEST_CASE("subtree sizes") {
  const RankTree t = twelve_node_tree();
  const SubtreeSizes s = subtree_sizes(t);
  CHECK(s.left[11] == 4);
  CHECK(s.right[11] == 1);
  CHECK(s.total[11] == 6);
  CHECK(s.left[7] == 0);
  CHECK(s.right[7] == 0);
  CHECK(s.total[7] == 1);
  CHECK(s.total[t.root] == 12);

  const SubtreeSizes spine = subtree_sizes(right_spine(4));
  CHECK(spine.right[1] == 3);
  CHECK(spine.left[1] == 0);
}

TEST_CASE("top nodes") {
  const TopNodes tops = top_nodes(eleven_node_tree());
  CHECK(tops.top_left == std::vector<int>{5, 2, 1});
  CHECK(tops.top_right == std::vector<int>{5, 9, 11});

  RankTree single(1);
  single.root = 1;
  const TopNodes one = top_nodes(single);
  CHECK(one.top_left == std::vector<int>{1});
  CHECK(one.top_right == std::vector<int>{1});
}

TEST_CASE("top node rank characterization over all small trees") {
  for (int n = 1; n <= 8; ++n) {
    for_each_tree(n, [&](const RankTree& tree) {
      const SubtreeSizes s = subtree_sizes(tree);
      const TopNodes tops = top_nodes(tree);
      const std::set<int> tl(tops.top_left.begin(), tops.top_left.end());
      const std::set<int> tr(tops.top_right.begin(), tops.top_right.end());
      for (int t = 1; t <= n; ++t) {
        CHECK(tr.count(t) == (t + s.right[t] == n ? 1u : 0u));
        CHECK(tl.count(t) == (t == s.left[t] + 1 ? 1u : 0u));
        if (t + s.right[t] < n) {
          // Top-right node of the left subtree of the node one rank past its span.
          const int anchor = t + s.right[t] + 1;
          int probe = tree.left[anchor];
          bool found = false;
          while (probe != 0) {
            if (probe == t) found = true;
            probe = tree.right[probe];
          }
          CHECK(found);
        }
      }
      // Root rank identities.
      CHECK(tree.root == s.left[tree.root] + 1);
      CHECK(tree.root == n - s.right[tree.root]);
    });
  }
}

TEST_CASE("cartesian tree construction") {
  const std::vector<double> u{0.3, 0.9, 0.5};
  CartesianStats stats;
  const RankTree t = find_cartesian_tree(u, &stats);
  CHECK(t.root == 2);
  CHECK(t.left[2] == 1);
  CHECK(t.right[2] == 3);
  CHECK(validate(t).ok);
  CHECK(is_cartesian_for(t, u));
  CHECK(stats.pushes + stats.pops <= 6);

  // Strictly decreasing values: right spine rooted at 1.
  const std::vector<double> dec{5.0, 4.0, 3.0, 2.0};
  CHECK(find_cartesian_tree(dec) == right_spine(4));

  // Constant values: ties do not pop, earlier index stays the ancestor.
  const std::vector<double> flat{1.0, 1.0, 1.0};
  CHECK(find_cartesian_tree(flat) == right_spine(3));
}

TEST_CASE("cartesian trees on random points") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    const std::vector<double> u = testutil::random_point(n, rng);
    CartesianStats stats;
    const RankTree t = find_cartesian_tree(u, &stats);
    CHECK(validate(t).ok);
    CHECK(is_cartesian_for(t, u));
    CHECK(stats.pushes + stats.pops <= 2 * n);
  }
}

TEST_CASE("is_cartesian_for") {
  const std::vector<double> inc{0.0, 1.0};
  CHECK_FALSE(is_cartesian_for(right_spine(2), inc));
  const std::vector<double> flat{0.5, 0.5};
  CHECK(is_cartesian_for(right_spine(2), flat));
  CHECK_THROWS_AS(is_cartesian_for(right_spine(2), std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("tree enumeration counts are Catalan numbers") {
  CHECK(catalan(3) == 5);
  CHECK(catalan(4) == 14);
  CHECK(catalan(10) == 16796);
  for (int n = 1; n <= 7; ++n) {
    std::set<std::string> seen;
    long long count = 0;
    for_each_tree(n, [&](const RankTree& t) {
      ++count;
      CHECK(validate(t).ok);
      seen.insert(format_tree(t));
    });
    CHECK(count == static_cast<long long>(catalan(n)));
    CHECK(seen.size() == catalan(n));  // pairwise distinct
  }
  long long count10 = 0;
  for_each_tree(10, [&](const RankTree&) { ++count10; });
  CHECK(count10 == 16796);
  CHECK_THROWS_AS(for_each_tree(13, [](const RankTree&) {}), std::invalid_argument);
}

TEST_CASE("mirror") {
  for (int n = 1; n <= 6; ++n) {
    for_each_tree(n, [&](const RankTree& t) {
      const RankTree m = mirror(t);
      CHECK(validate(m).ok);
      CHECK(mirror(m) == t);
      const SubtreeSizes st = subtree_sizes(t);
      const SubtreeSizes sm = subtree_sizes(m);
      for (int v = 1; v <= n; ++v) {
        CHECK(sm.left[n + 1 - v] == st.right[v]);
        CHECK(sm.right[n + 1 - v] == st.left[v]);
      }
      // Top-right nodes map to top-left nodes of the mirror.
      const TopNodes tt = top_nodes(t);
      const TopNodes tm = top_nodes(m);
      std::vector<int> mapped;
      for (int v : tt.top_right) mapped.push_back(n + 1 - v);
      CHECK(mapped == tm.top_left);
    });
  }
  CHECK(mirror(right_spine(5)).left[5] == 4);  // left spine rooted at n
}

TEST_CASE("tree text form") {
  RankTree t(3);
  t.root = 2;
  t.left[2] = 1;
  t.right[2] = 3;
  CHECK(format_tree(t) == "((1) 2 (3))");
  CHECK(parse_tree("((1) 2 (3))") == t);
  CHECK(parse_tree(format_tree(right_spine(4))) == right_spine(4));
  for_each_tree(5, [&](const RankTree& tree) { CHECK(parse_tree(format_tree(tree)) == tree); });
  CHECK_THROWS_AS(parse_tree("((1) 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tree("((1) 3)"), std::invalid_argument);
}
