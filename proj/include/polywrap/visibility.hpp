#pragma once
// Clear visibility from a vertex to the relative interior of a wrap edge.

#include <algorithm>
#include <vector>

#include "polywrap/exact.hpp"
#include "polywrap/geometry.hpp"
#include "polywrap/wrap.hpp"

namespace polywrap {

/// Point a + t (b - a) as an exact homogeneous point.
inline HPoint point_on_edge(const Point& a, const Point& b, const Fraction& t) {
  if (t.den > kMaxWeight)
    throw Error(ErrorKind::VisibilityViolated, "edge parameter denominator too large");
  return {a.x * t.den + t.num * (b.x - a.x), a.y * t.den + t.num * (b.y - a.y), t.den};
}

/// Position of direction b->d relative to the convex sector spanned by
/// b->a and b->c (a, b, c non-collinear).
enum class SectorSide { Inside, OnRay, Outside };

inline SectorSide sector_side(const HPoint& b, const HPoint& a, const HPoint& c, const HPoint& d) {
  int o = orient_sign(b, a, c);
  int s1 = orient_sign(b, a, d) * o;
  int s2 = -orient_sign(b, c, d) * o;
  if (s1 < 0 || s2 < 0) return SectorSide::Outside;
  if (s1 == 0) return dot_sign(b, a, d) > 0 ? SectorSide::OnRay : SectorSide::Outside;
  if (s2 == 0) return dot_sign(b, c, d) > 0 ? SectorSide::OnRay : SectorSide::Outside;
  return SectorSide::Inside;
}

struct VisibleInterval {
  Fraction lo;      // exclusive
  Fraction hi;      // exclusive
  Fraction sample;  // simplest parameter strictly inside (lo, hi)
};

namespace detail {

inline bool segment_meets_triangle(const Point& p, const Point& q, const Point& a, const Point& b,
                                   const Point& c) {
  if (in_closed_triangle(p, a, b, c) || in_closed_triangle(q, a, b, c)) return true;
  return segments_intersect(p, q, a, b) || segments_intersect(p, q, b, c) ||
         segments_intersect(p, q, c, a);
}

/// Positions of wrap edges that can possibly touch a segment from v to the
/// edge at `edge_pos`.
inline std::vector<Position> candidate_blockers(const Wrap& w, const PointSet& ps, Index v,
                                                Position edge_pos) {
  const Point &pa = ps[w.at(edge_pos)], &pb = ps[w.at(edge_pos + 1)], &pv = ps[v];
  std::vector<Position> out;
  for (Position j = 0; j < w.size(); ++j) {
    if (j == edge_pos) continue;
    const Point &p = ps[w.at(j)], &q = ps[w.at(j + 1)];
    if (segment_meets_triangle(p, q, pv, pa, pb)) out.push_back(j);
  }
  return out;
}

inline bool clear_against(const Wrap& w, const PointSet& ps, Index v, const HPoint& x,
                          Position edge_pos, const std::vector<Position>& blockers) {
  Index ea = w.at(edge_pos), eb = w.at(edge_pos + 1);
  const HPoint hv(ps[v]);
  for (Position j : blockers) {
    Index p = w.at(j), q = w.at(j + 1);
    if ((p == ea && q == eb) || (p == eb && q == ea)) continue;  // doubled copy of e
    const HPoint hp(ps[p]), hq(ps[q]);
    if (!segments_intersect(hv, x, hp, hq)) continue;
    if (p == v || q == v) {
      const HPoint ho(ps[p == v ? q : p]);
      if (orient_sign(hv, x, ho) != 0) continue;
      if (dot_sign(hv, x, ho) <= 0) continue;
    }
    return false;
  }
  return true;
}

}  // namespace detail

/// True iff segment v-x meets the wrap boundary only at v and x, where x is
/// a point in the open edge at `edge_pos`.
inline bool clearly_sees(const Wrap& w, const PointSet& ps, Index v, const HPoint& x,
                         Position edge_pos) {
  std::vector<Position> all;
  for (Position j = 0; j < w.size(); ++j)
    if (j != edge_pos) all.push_back(j);
  return detail::clear_against(w, ps, v, x, edge_pos, all);
}

/// Open sub-intervals of the edge at `edge_pos` (parametrised by t in (0,1)
/// from sigma[edge_pos] to sigma[edge_pos+1]) that v sees clearly.  Intervals
/// are split at every direction from v through a point of S.
inline std::vector<VisibleInterval> visible_intervals(const Wrap& w, const PointSet& ps, Index v,
                                                      Position edge_pos) {
  Index ia = w.at(edge_pos), ib = w.at(edge_pos + 1);
  if (v == ia || v == ib)
    throw Error(ErrorKind::VisibilityViolated, "vertex is an endpoint of the edge");
  const Point &a = ps[ia], &b = ps[ib], &pv = ps[v];
  if (orient_sign(a, b, pv) == 0) return {};

  auto blockers = detail::candidate_blockers(w, ps, v, edge_pos);

  std::vector<Fraction> cuts{Fraction(0, 1), Fraction(1, 1)};
  const std::int64_t dx = b.x - a.x, dy = b.y - a.y;
  auto add_cut = [&](const Point& p) {
    if (p == pv) return;
    const std::int64_t rx = p.x - pv.x, ry = p.y - pv.y;
    i128 den = i128(dx) * ry - i128(dy) * rx;  // cross(b - a, p - v)
    if (den == 0) return;
    i128 num = i128(pv.x - a.x) * ry - i128(pv.y - a.y) * rx;  // cross(v - a, p - v)
    Fraction t(num, den);
    if (Fraction(0, 1) < t && t < Fraction(1, 1)) cuts.push_back(t);
  };
  for (Position j : blockers) {
    add_cut(ps[w.at(j)]);
    add_cut(ps[w.at(j + 1)]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<VisibleInterval> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Fraction t = simplest_between(cuts[i], cuts[i + 1]);
    if (t.den > kMaxWeight) continue;
    HPoint x = point_on_edge(a, b, t);
    if (detail::clear_against(w, ps, v, x, edge_pos, blockers))
      out.push_back({cuts[i], cuts[i + 1], t});
  }
  return out;
}

}  // namespace polywrap
