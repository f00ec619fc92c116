#include <gtest/gtest.h>

#include <random>

#include "polywrap/instances.hpp"
#include "polywrap/invariants.hpp"
#include "polywrap/transforms.hpp"

using namespace polywrap;

namespace {

PointSet p5() { return PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {3, 1}}); }
PointSet s6() { return PointSet({{0, 0}, {8, 0}, {8, 8}, {0, 8}, {6, 1}, {1, 6}}); }

bool contains(const std::vector<Index>& v, Index x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST(CanonicalOrder, AngleSortAboutA) {
  PointSet ps({{0, 0}, {0, 5}, {3, 1}, {2, 2}, {1, 3}, {5, 0}});
  EXPECT_EQ(canonical_order(ps, 0, 1, {4, 2, 3}), (std::vector<Index>{2, 3, 4}));
}

TEST(CanonicalOrder, CollinearNearestFirst) {
  PointSet ps({{0, 0}, {0, 5}, {2, 2}, {1, 1}, {5, 0}});
  EXPECT_EQ(canonical_order(ps, 0, 1, {2, 3}), (std::vector<Index>{3, 2}));
}

TEST(LowestHullEdge, SmallestIndexPair) {
  EXPECT_EQ(lowest_hull_edge(p5()), (std::pair<Index, Index>{0, 1}));
  PointSet ps({{5, 5}, {0, 0}, {4, 0}, {2, 1}, {0, 4}});
  // Hull is 1,2,0,4; edge {0,2} is the smallest pair.
  EXPECT_EQ(lowest_hull_edge(ps), (std::pair<Index, Index>{0, 2}));
}

TEST(SinglePocketReduction, S6EmptiesLid01) {
  PointSet ps = s6();
  MoveEngine eng(ps, Wrap(6, {0, 4, 1, 2, 3, 5}));
  Journal j;
  SingleReport rep = single_pocket_reduction(eng, 0, 1, j);
  EXPECT_LE(rep.iterations, 3);
  EXPECT_TRUE(rep.strictly_decreasing());
  EXPECT_EQ(rep.counts.back(), 2);
  auto pk = pockets(eng.wrap(), ps);
  EXPECT_EQ(find_pocket(pk, 0, 1), nullptr);
  ASSERT_EQ(pk.size(), 1u);
  EXPECT_TRUE(contains(pk[0].chain, 4));
  EXPECT_TRUE(is_simple(eng.wrap(), ps));
}

TEST(SinglePocketReduction, BareLidIsNoop) {
  PointSet ps = p5();
  MoveEngine eng(ps, Wrap(5, {0, 1, 2, 4, 3}));
  Journal j;
  // Lid {0,1} is already a polygon edge.
  SingleReport rep = single_pocket_reduction(eng, 0, 1, j);
  EXPECT_EQ(rep.iterations, 0);
  EXPECT_TRUE(j.empty());
}

TEST(SinglePocketReduction, PropertiesOnRandomSets) {
  int runs = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    PointSet ps = random_points(8, static_cast<std::uint64_t>(seed), 40);
    int taken = 0;
    for (const auto& order : enumerate_polygonizations(ps)) {
      MoveEngine eng(ps, Wrap(8, order));
      auto level1 = pockets(eng.wrap(), ps);
      if (level1.size() < 2) continue;
      const PocketNode& pk = level1.front();
      Journal j;
      SingleReport rep = single_pocket_reduction(eng, pk.lid_a, pk.lid_b, j);
      EXPECT_LE(rep.iterations, pk.count);
      EXPECT_TRUE(rep.strictly_decreasing());
      EXPECT_EQ(find_pocket(pockets(eng.wrap(), ps), pk.lid_a, pk.lid_b), nullptr);
      ASSERT_TRUE(is_simple(eng.wrap(), ps));
      ++runs;
      if (++taken == 5) break;
    }
  }
  EXPECT_GT(runs, 30);
}

TEST(PocketReduction, S6IntoLid30) {
  PointSet ps = s6();
  MoveEngine eng(ps, Wrap(6, {0, 4, 1, 2, 3, 5}));
  Journal j;
  pocket_reduction(eng, 3, 0, j);
  auto pk = pockets(eng.wrap(), ps);
  ASSERT_EQ(pk.size(), 1u);
  EXPECT_EQ(detail::ukey(pk[0].lid_a, pk[0].lid_b), (std::pair<Index, Index>{0, 3}));
  EXPECT_TRUE(contains(pk[0].chain, 4));
  EXPECT_TRUE(contains(pk[0].chain, 5));
}

TEST(PocketReduction, AlreadySinglePocketIsNoop) {
  PointSet ps = p5();
  MoveEngine eng(ps, Wrap(5, {0, 4, 1, 2, 3}));
  Journal j;
  EXPECT_TRUE(pocket_reduction(eng, 0, 1, j).empty());
  EXPECT_TRUE(j.empty());
}

TEST(CanonicalPolygonization, RerunIsIdempotent) {
  int runs = 0;
  for (int seed = 1; seed <= 30; ++seed) {
    PointSet ps = random_points(9, static_cast<std::uint64_t>(seed), 40);
    auto lid = lowest_hull_edge(ps);
    MoveEngine eng(ps, Wrap(9, initial_polygonization(ps, lid.first, lid.second)));
    auto level1 = pockets(eng.wrap(), ps);
    if (level1.size() != 1) continue;
    const int k = static_cast<int>(detail::distinct(level1[0].chain).size()) - 2;
    Journal j;
    CanonicalReport rep = canonical_polygonization(eng, lid.first, lid.second, j);
    EXPECT_LE(rep.moves, k);
    EXPECT_TRUE(rep.prefix_consecutive);
    auto chain = pocket_chain(eng.wrap(), ps, lid.first, lid.second);
    EXPECT_EQ(std::vector<Index>(chain.begin() + 1, chain.end() - 1), rep.order);
    Journal j2;
    EXPECT_EQ(canonical_polygonization(eng, lid.first, lid.second, j2).moves, 0);
    ++runs;
  }
  EXPECT_GT(runs, 10);
}

TEST(Transform, IdentityPair) {
  PointSet ps = p5();
  auto r = transform(ps, {0, 4, 1, 2, 3}, {0, 4, 1, 2, 3});
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(cyclic_equal(r.result, {0, 4, 1, 2, 3}));
}

TEST(Transform, P5Example) {
  PointSet ps = p5();
  auto r = transform(ps, {0, 4, 1, 2, 3}, {0, 1, 2, 4, 3});
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(cyclic_equal(r.result, {0, 1, 2, 4, 3}));
  EXPECT_TRUE(is_simple(r.result, ps));
}

TEST(Transform, AllP5Pairs) {
  PointSet ps = p5();
  auto all = enumerate_polygonizations(ps);
  ASSERT_EQ(all.size(), 4u);
  for (const auto& a : all)
    for (const auto& b : all) {
      auto r = transform(ps, a, b);
      EXPECT_TRUE(r.ok);
      EXPECT_TRUE(cyclic_equal(r.result, b));
      EXPECT_LE(r.budget.moves(), 4 * 5 * 5);
    }
}

TEST(Transform, RandomPairsWithMonitor) {
  std::mt19937_64 rng(3);
  for (int seed = 1; seed <= 8; ++seed) {
    PointSet ps = random_points(8, static_cast<std::uint64_t>(seed), 40);
    auto all = enumerate_polygonizations(ps);
    ASSERT_FALSE(all.empty());
    InvariantMonitor mon(ps, {CheckLevel::EveryAtomic, false, true});
    TransformOptions topt;
    topt.hook = mon.hook();
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int k = 0; k < 5; ++k) {
      const auto& a = all[pick(rng)];
      const auto& b = all[pick(rng)];
      auto r = transform(ps, a, b, topt);
      EXPECT_TRUE(r.ok);
      EXPECT_TRUE(cyclic_equal(r.result, b));
      EXPECT_LE(r.budget.moves(), 4 * 8 * 8);
    }
    EXPECT_EQ(mon.stats().weak_violations, 0);
  }
}

TEST(Transform, RejectsNonSimpleInput) {
  PointSet ps({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_THROW(transform(ps, {0, 2, 1, 3}, {0, 1, 2, 3}), Error);
}

TEST(Transform, ConvexSetIsTrivial) {
  PointSet ps({{0, 0}, {4, 0}, {6, 3}, {4, 6}, {0, 6}});
  auto r = transform(ps, {0, 1, 2, 3, 4}, {4, 3, 2, 1, 0});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.budget.moves(), 0);
}
