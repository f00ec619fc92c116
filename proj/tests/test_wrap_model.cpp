#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "polywrap/instances.hpp"
#include "polywrap/wrap.hpp"

using namespace polywrap;

namespace {

PointSet p5() { return PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {3, 1}}); }
PointSet unit_square() { return PointSet({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

// Brute-force oracle: float-free segment tests done with plain long long.
long long cr(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }
int sg(long long v) { return (v > 0) - (v < 0); }
bool on_open_seg(Point p, Point q, Point r) {
  if (cr(p, q, r) != 0) return false;
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y) && !(r == p) && !(r == q);
}
bool oracle_simple(const std::vector<Index>& s, const PointSet& ps) {
  const int m = static_cast<int>(s.size());
  for (int i = 0; i < m; ++i) {
    Point a = ps[s[i]], b = ps[s[(i + 1) % m]];
    for (int k = 0; k < ps.size(); ++k)
      if (on_open_seg(a, b, ps[k])) return false;
    for (int j = 0; j < m; ++j) {
      if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
      Point c = ps[s[j]], d = ps[s[(j + 1) % m]];
      int o1 = sg(cr(a, b, c)), o2 = sg(cr(a, b, d)), o3 = sg(cr(c, d, a)), o4 = sg(cr(c, d, b));
      if (o1 * o2 < 0 && o3 * o4 < 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST(IsSimple, SquareAndBowtie) {
  PointSet sq = unit_square();
  EXPECT_TRUE(is_simple(std::vector<Index>{0, 1, 2, 3}, sq));
  EXPECT_FALSE(is_simple(std::vector<Index>{0, 2, 1, 3}, sq));
}

TEST(IsSimple, P5WithInteriorPoint) {
  EXPECT_TRUE(is_simple(std::vector<Index>{0, 4, 1, 2, 3}, p5()));
}

TEST(IsSimple, VertexOnNonIncidentEdge) {
  PointSet ps({{0, 0}, {4, 0}, {4, 4}, {2, 0}, {2, 2}});
  // Edge 0-1 passes through point 3.
  EXPECT_FALSE(is_simple(std::vector<Index>{0, 1, 2, 4, 3}, ps));
}

TEST(IsSimple, MatchesBruteForceOnRandomPermutations) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    PointSet ps = random_points(7, trial + 1, 20);
    std::vector<Index> s(7);
    std::iota(s.begin(), s.end(), 0);
    for (int r = 0; r < 30; ++r) {
      std::shuffle(s.begin(), s.end(), rng);
      EXPECT_EQ(is_simple(s, ps), oracle_simple(s, ps));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 1800);
}

TEST(Wrap, RejectsMissingIndex) {
  EXPECT_THROW(Wrap(4, {0, 1, 2, 1}), Error);
  EXPECT_THROW(Wrap(3, {0, 1, 5}), Error);
}

TEST(Wrap, DoubleContactsTracked) {
  Wrap w(5, {0, 4, 1, 2, 4, 3});
  EXPECT_EQ(w.double_contacts(), std::vector<Index>{4});
  EXPECT_EQ(w.positions_of(4), (std::vector<Position>{1, 4}));
  EXPECT_FALSE(w.is_polygonization());
  w.replace_at(1, std::span<const Index>{});
  EXPECT_TRUE(w.double_contacts().empty());
  EXPECT_EQ(w.count(4), 1);
}

TEST(WeakCheck, PolygonizationIsOk) {
  EXPECT_TRUE(weak_simplicity_check(Wrap(5, {0, 4, 1, 2, 3}), p5()).ok);
}

TEST(WeakCheck, BowtieFails) {
  auto r = weak_simplicity_check(Wrap(4, {0, 2, 1, 3}), unit_square());
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.description.empty());
}

TEST(WeakCheck, HairpinWithDoubledEdgeIsOk) {
  // 0..3 square, 4 at the centre reached by a hairpin from 0.
  PointSet ps({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 2}});
  EXPECT_TRUE(weak_simplicity_check(Wrap(5, {0, 4, 0, 1, 2, 3}), ps).ok);
}

TEST(WeakCheck, DoubleContactWrapIsOk) {
  EXPECT_TRUE(weak_simplicity_check(Wrap(5, {0, 4, 1, 2, 4, 3}), p5()).ok);
}

TEST(WeakCheck, PointInsideEdgeFails) {
  PointSet ps({{0, 0}, {4, 0}, {4, 4}, {2, 0}});
  EXPECT_FALSE(weak_simplicity_check(Wrap(4, {0, 1, 2, 3}), ps).ok);
}

TEST(Perimeter, UnitSquare) { EXPECT_DOUBLE_EQ(perimeter(Wrap(4, {0, 1, 2, 3}), unit_square()), 4.0); }

TEST(Perimeter, HairpinCountsTwice) {
  PointSet ps({{0, 0}, {1, 0}, {0, 5}});
  // a,b,a hairpin plus the path to point 2 and back.
  double p = perimeter(Wrap(3, {0, 1, 0, 2}), ps);
  EXPECT_NEAR(p, 2.0 + 10.0, 1e-12);
}

TEST(Perimeter, P5DirectSum) {
  // 0-4, 4-1, 1-2, 2-3, 3-0
  const double want = std::sqrt(10.0) + std::sqrt(2.0) + 4 + 4 + 4;
  double got = perimeter(Wrap(5, {0, 4, 1, 2, 3}), p5());
  EXPECT_NEAR(got, want, 1e-12 * want);
}

TEST(Perimeter, InvariantUnderRotationAndReversal) {
  PointSet ps = random_points(9, 3, 100);
  auto order = initial_polygonization(ps);
  double base = perimeter(Wrap(9, order), ps);
  for (int r = 0; r < 9; ++r) {
    std::vector<Index> s = order;
    std::rotate(s.begin(), s.begin() + r, s.end());
    EXPECT_NEAR(perimeter(Wrap(9, s), ps), base, 1e-12 * base);
    std::reverse(s.begin(), s.end());
    EXPECT_NEAR(perimeter(Wrap(9, s), ps), base, 1e-12 * base);
  }
}

TEST(CyclicEqual, RotationReversal) {
  using V = std::vector<Index>;
  EXPECT_TRUE(cyclic_equal(V{0, 1, 2, 3}, V{2, 3, 0, 1}));
  EXPECT_TRUE(cyclic_equal(V{0, 1, 2, 3}, V{3, 2, 1, 0}));
  EXPECT_FALSE(cyclic_equal(V{0, 1, 2, 3}, V{0, 2, 1, 3}));
  EXPECT_FALSE(cyclic_equal(V{0, 1, 2}, V{0, 1, 2, 3}));
}

TEST(CanonicalCycle, SameForEquivalentSequences) {
  using V = std::vector<Index>;
  EXPECT_EQ(canonical_cycle(V{2, 3, 0, 1}), canonical_cycle(V{1, 0, 3, 2}));
  EXPECT_EQ(canonical_cycle(V{3, 1, 2, 0})[0], 0);
}

TEST(Digest, RotationSensitive) {
  using V = std::vector<Index>;
  EXPECT_EQ(digest(V{0, 1, 2}), digest(V{0, 1, 2}));
  EXPECT_NE(digest(V{0, 1, 2}), digest(V{1, 2, 0}));
}

TEST(Wrap, SimpleWithoutDoublesPassesIsSimple) {
  for (int seed = 1; seed <= 20; ++seed) {
    PointSet ps = random_points(10, seed, 50);
    Wrap w(10, initial_polygonization(ps));
    EXPECT_TRUE(w.double_contacts().empty());
    EXPECT_TRUE(is_simple(w, ps));
    EXPECT_TRUE(weak_simplicity_check(w, ps).ok);
  }
}
