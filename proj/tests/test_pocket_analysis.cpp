#include <gtest/gtest.h>

#include <random>

#include "polywrap/instances.hpp"
#include "polywrap/moves.hpp"
#include "polywrap/pockets.hpp"

using namespace polywrap;

namespace {

PointSet p5() { return PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {3, 1}}); }

// Square with a bottom pocket (0,4,5,6,1) whose hull edge 6-4 lids a subpocket.
PointSet nested_points() {
  return PointSet({{0, 0}, {20, 0}, {20, 20}, {0, 20}, {4, 10}, {10, 2}, {16, 10}});
}
const std::vector<Index> kNested{0, 4, 5, 6, 1, 2, 3};

int depth(const PocketNode& n) {
  int d = 0;
  for (const auto& c : n.children) d = std::max(d, depth(c));
  return d + 1;
}

// Oracle count: points of S on or in the hull of `chain`, by brute force
// over all non-degenerate triangles of chain points.
int oracle_count(const PointSet& ps, const std::vector<Index>& chain) {
  int cnt = 0;
  for (Index k = 0; k < ps.size(); ++k) {
    bool in = std::find(chain.begin(), chain.end(), k) != chain.end();
    for (std::size_t i = 0; i < chain.size() && !in; ++i)
      for (std::size_t j = i + 1; j < chain.size() && !in; ++j)
        for (std::size_t l = j + 1; l < chain.size() && !in; ++l) {
          const Point &a = ps[chain[i]], &b = ps[chain[j]], &c = ps[chain[l]];
          if (orient_sign(a, b, c) == 0) continue;
          in = in_closed_triangle(ps[k], a, b, c);
        }
    cnt += in;
  }
  return cnt;
}

void check_counts(const PointSet& ps, const PocketNode& n) {
  if (n.level > 1) EXPECT_EQ(n.count, oracle_count(ps, n.chain));
  for (const auto& c : n.children) check_counts(ps, c);
}

}  // namespace

TEST(Pockets, ConvexHasNone) {
  PointSet ps({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  Wrap w(4, {0, 1, 2, 3});
  EXPECT_TRUE(pockets(w, ps).empty());
  EXPECT_EQ(pocket_vector(w, ps), (PocketVector{4}));
  EXPECT_EQ(depth(pocket_tree(w, ps)), 1);
}

TEST(Pockets, P5SinglePocket) {
  PointSet ps = p5();
  Wrap w(5, {0, 4, 1, 2, 3});
  auto pk = pockets(w, ps);
  ASSERT_EQ(pk.size(), 1u);
  EXPECT_EQ(detail::ukey(pk[0].lid_a, pk[0].lid_b), (std::pair<Index, Index>{0, 1}));
  EXPECT_EQ(detail::distinct(pk[0].chain), (std::vector<Index>{0, 1, 4}));
  EXPECT_EQ(pocket_count(pk[0]), 3);
  EXPECT_TRUE(pk[0].children.empty());
  EXPECT_EQ(pocket_vector(w, ps), (PocketVector{5, 3}));
}

TEST(Pockets, TwoPocketInstance) {
  PointSet ps({{0, 0}, {8, 0}, {8, 8}, {0, 8}, {6, 1}, {1, 6}});
  Wrap w(6, {0, 4, 1, 2, 3, 5});
  auto pk = pockets(w, ps);
  ASSERT_EQ(pk.size(), 2u);
  EXPECT_NE(find_pocket(pk, 0, 1), nullptr);
  EXPECT_NE(find_pocket(pk, 3, 0), nullptr);
  EXPECT_EQ(find_pocket(pk, 1, 2), nullptr);
  EXPECT_EQ(pocket_vector(w, ps), (PocketVector{6, 6}));
}

TEST(Pockets, NestedDepthThree) {
  PointSet ps = nested_points();
  Wrap w(7, kNested);
  ASSERT_TRUE(is_simple(w, ps));
  PocketNode root = pocket_tree(w, ps);
  EXPECT_EQ(depth(root), 3);
  ASSERT_EQ(root.children.size(), 1u);
  const PocketNode& a = root.children[0];
  EXPECT_EQ(a.count, 5);
  ASSERT_EQ(a.children.size(), 1u);
  EXPECT_EQ(detail::ukey(a.children[0].lid_a, a.children[0].lid_b), (std::pair<Index, Index>{4, 6}));
  EXPECT_EQ(a.children[0].count, 3);
  EXPECT_EQ(pocket_vector(root), (PocketVector{7, 5, 3}));
}

TEST(Pockets, DoubleContactCountedOnce) {
  PointSet ps = p5();
  Wrap w(5, {0, 4, 1, 2, 4, 3});
  for (const auto& pk : pockets(w, ps)) EXPECT_EQ(pk.count, oracle_count(ps, detail::distinct(pk.chain)));
  EXPECT_EQ(pocket_vector(w, ps)[0], 5);
}

TEST(Pockets, CountsMatchOracleOnRandomPolygons) {
  for (int seed = 1; seed <= 30; ++seed) {
    PointSet ps = random_points(11, static_cast<std::uint64_t>(seed), 40);
    Wrap w(11, initial_polygonization(ps));
    PocketNode root = pocket_tree(w, ps);
    EXPECT_EQ(root.count, 11);
    check_counts(ps, root);
  }
}

TEST(Pockets, EveryVertexOnSomeHull) {
  for (int seed = 1; seed <= 20; ++seed) {
    PointSet ps = random_points(9, static_cast<std::uint64_t>(seed), 30);
    for (const auto& order : enumerate_polygonizations(ps)) {
      PocketNode root = pocket_tree(Wrap(9, order), ps);
      std::vector<char> seen(9, 0);
      std::vector<const PocketNode*> stack{&root};
      while (!stack.empty()) {
        const PocketNode* n = stack.back();
        stack.pop_back();
        for (Index i : n->hull) seen[static_cast<std::size_t>(i)] = 1;
        for (const auto& c : n->children) stack.push_back(&c);
      }
      EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), 9);
      EXPECT_EQ(pocket_vector(root)[0], 9);
    }
  }
}

TEST(LexLess, TableRows) {
  EXPECT_TRUE(lex_less({13, 18, 13, 5, 4}, {13, 18, 14, 3}));
  EXPECT_TRUE(lex_less({13, 17, 10, 5, 4}, {13, 18, 13, 5, 4}));
  EXPECT_FALSE(lex_less({13, 18, 14, 3}, {13, 18, 14, 3}));
  EXPECT_FALSE(lex_less({13, 18, 14, 3}, {13, 18, 13, 5, 4}));
  // Missing entries are zero.
  EXPECT_TRUE(lex_less({5}, {5, 3}));
  EXPECT_FALSE(lex_less({5, 0}, {5}));
}

TEST(HullOfPocket, SegmentAndTriangle) {
  PointSet ps = p5();
  const Index seg[] = {0, 1};
  ConvexRegion r(ps, seg);
  EXPECT_TRUE(r.contains(Point{2, 0}));
  EXPECT_FALSE(r.contains(Point{2, 1}));
  Wrap w(5, {0, 4, 1, 2, 3});
  auto pk = pockets(w, ps);
  const ConvexRegion& tri = hull_of_pocket(pk[0]);
  EXPECT_TRUE(tri.contains(Point{2, 0}));
  EXPECT_TRUE(tri.contains(Point{3, 1}));
  EXPECT_FALSE(tri.contains(Point{1, 1}));
}

TEST(PocketVector, P5TwangDescends) {
  PointSet ps = p5();
  Wrap w(5, {0, 4, 1, 2, 4, 3});
  PocketVector before = pocket_vector(w, ps);
  auto pre = pockets(w, ps);
  apply_twang(w, ps, 1);
  EXPECT_TRUE(lex_less(pocket_vector(w, ps), before));
  for (const auto& a2 : pockets(w, ps)) {
    const PocketNode* a = find_pocket(pre, a2.lid_a, a2.lid_b);
    ASSERT_NE(a, nullptr);
    EXPECT_TRUE(hull_nested(ps, a2, *a));
  }
}

TEST(PocketVector, PolygonizationSameAsWrapView) {
  PointSet ps = nested_points();
  EXPECT_EQ(pocket_vector(Wrap(7, kNested), ps), pocket_vector(Wrap(ps.size(), kNested), ps));
  auto rotated = kNested;
  std::rotate(rotated.begin(), rotated.begin() + 3, rotated.end());
  EXPECT_EQ(pocket_vector(Wrap(7, rotated), ps), (PocketVector{7, 5, 3}));
}
