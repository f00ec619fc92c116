#pragma once
// Point sets, convex hulls, triangle membership and the confined elastic
// chain used by twangs and stretches.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "polywrap/errors.hpp"
#include "polywrap/exact.hpp"

namespace polywrap {

using Index = int;

/// Immutable indexed point set S: n >= 3 distinct points, not all collinear.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 3) throw Error(ErrorKind::InvalidPointSet, "need at least 3 points");
    for (const Point& p : pts_) {
      if (std::llabs(p.x) > kCoordLimit || std::llabs(p.y) > kCoordLimit)
        throw Error(ErrorKind::InvalidPointSet, "coordinate out of range");
    }
    std::vector<Point> sorted = pts_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::InvalidPointSet, "duplicate points");
    bool all_collinear = true;
    for (std::size_t i = 2; i < pts_.size() && all_collinear; ++i)
      all_collinear = orient_sign(pts_[0], pts_[1], pts_[i]) == 0;
    if (all_collinear) throw Error(ErrorKind::DegenerateInput, "all points collinear");
  }

  int size() const { return static_cast<int>(pts_.size()); }
  const Point& operator[](Index i) const { return pts_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& points() const { return pts_; }

 private:
  std::vector<Point> pts_;
};

enum class TriangleLocation { Interior, Boundary, Outside };

inline TriangleLocation point_in_triangle(const HPoint& p, const HPoint& a, const HPoint& b,
                                          const HPoint& c) {
  int o = orient_sign(a, b, c);
  if (o == 0) throw Error(ErrorKind::DegenerateTriangle, "collinear triangle corners");
  int s1 = orient_sign(a, b, p) * o, s2 = orient_sign(b, c, p) * o, s3 = orient_sign(c, a, p) * o;
  if (s1 < 0 || s2 < 0 || s3 < 0) return TriangleLocation::Outside;
  if (s1 == 0 || s2 == 0 || s3 == 0) return TriangleLocation::Boundary;
  return TriangleLocation::Interior;
}

inline bool in_closed_triangle(const HPoint& p, const HPoint& a, const HPoint& b,
                               const HPoint& c) {
  return point_in_triangle(p, a, b, c) != TriangleLocation::Outside;
}

struct Hull {
  std::vector<Index> corners;   // CCW, strict corners only
  std::vector<Index> boundary;  // CCW, corners plus collinear on-hull points
  std::vector<Index> on_hull;   // non-corner points lying on hull edges
};

/// Convex hull of a subset of S.  Throws DegenerateInput if all collinear.
inline Hull convex_hull(const PointSet& ps, std::span<const Index> subset) {
  std::vector<Index> idx(subset.begin(), subset.end());
  std::sort(idx.begin(), idx.end(), [&](Index a, Index b) { return ps[a] < ps[b]; });
  idx.erase(std::unique(idx.begin(), idx.end(), [&](Index a, Index b) { return ps[a] == ps[b]; }),
            idx.end());
  if (idx.size() < 3) throw Error(ErrorKind::DegenerateInput, "fewer than 3 distinct points");

  std::vector<Index> h(2 * idx.size());
  std::size_t k = 0;
  for (Index i : idx) {
    while (k >= 2 && cross(ps[h[k - 2]], ps[h[k - 1]], ps[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
    Index i = idx[t];
    while (k >= lo && cross(ps[h[k - 2]], ps[h[k - 1]], ps[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  if (h.size() < 3) throw Error(ErrorKind::DegenerateInput, "all points collinear");

  Hull out;
  out.corners = h;
  for (std::size_t c = 0; c < h.size(); ++c) {
    Index p = h[c], q = h[(c + 1) % h.size()];
    out.boundary.push_back(p);
    std::vector<Index> mid;
    for (Index i : idx) {
      if (i != p && i != q && in_segment_interior(ps[p], ps[q], ps[i])) mid.push_back(i);
    }
    std::sort(mid.begin(), mid.end(),
              [&](Index a, Index b) { return dot(ps[p], ps[q], ps[a]) < dot(ps[p], ps[q], ps[b]); });
    out.boundary.insert(out.boundary.end(), mid.begin(), mid.end());
    out.on_hull.insert(out.on_hull.end(), mid.begin(), mid.end());
  }
  return out;
}

inline Hull convex_hull(const PointSet& ps) {
  std::vector<Index> all(static_cast<std::size_t>(ps.size()));
  std::iota(all.begin(), all.end(), 0);
  return convex_hull(ps, all);
}

/// Closed convex region (possibly a segment or a point) over points of S,
/// supporting exact membership queries.
class ConvexRegion {
 public:
  ConvexRegion() = default;

  ConvexRegion(const PointSet& ps, std::span<const Index> pts) {
    std::vector<Index> idx(pts.begin(), pts.end());
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    bool collinear = true;
    for (std::size_t i = 2; i < idx.size() && collinear; ++i)
      collinear = orient_sign(ps[idx[0]], ps[idx[1]], ps[idx[i]]) == 0;
    if (idx.size() >= 3 && !collinear) {
      for (Index i : convex_hull(ps, idx).corners) corners_.push_back(ps[i]);
    } else {
      // Segment: keep the two extreme points.
      std::vector<Point> sorted;
      for (Index i : idx) sorted.push_back(ps[i]);
      std::sort(sorted.begin(), sorted.end());
      if (!sorted.empty()) {
        corners_.push_back(sorted.front());
        if (sorted.back() != sorted.front()) corners_.push_back(sorted.back());
      }
    }
  }

  bool contains(const Point& p) const {
    if (corners_.empty()) return false;
    if (corners_.size() == 1) return p == corners_[0];
    if (corners_.size() == 2) return on_segment(corners_[0], corners_[1], p);
    for (std::size_t i = 0; i < corners_.size(); ++i) {
      if (orient_sign(corners_[i], corners_[(i + 1) % corners_.size()], p) < 0) return false;
    }
    return true;
  }

  bool is_segment() const { return corners_.size() == 2; }
  const std::vector<Point>& corners() const { return corners_; }

 private:
  std::vector<Point> corners_;
};

/// The chain from a to c of the convex hull of {a, c} and `captured`, taken on
/// the side of segment ac where `apex` lies.  Collinear chain vertices are
/// included.  All captured points are assumed to lie in the closed triangle
/// (a, apex, c).  Returns the full chain including both endpoints.
inline std::vector<Index> hull_chain_toward(const PointSet& ps, Index a, Index c,
                                            const HPoint& apex, std::vector<Index> captured) {
  captured.erase(std::remove_if(captured.begin(), captured.end(),
                                [&](Index i) { return i == a || i == c; }),
                 captured.end());
  std::sort(captured.begin(), captured.end());
  captured.erase(std::unique(captured.begin(), captured.end()), captured.end());

  const Point& pa = ps[a];
  const Point& pc = ps[c];
  bool any_off_line = false;
  for (Index i : captured) any_off_line = any_off_line || orient_sign(pa, pc, ps[i]) != 0;

  if (!any_off_line) {
    std::sort(captured.begin(), captured.end(),
              [&](Index u, Index v) { return dot(pa, pc, ps[u]) < dot(pa, pc, ps[v]); });
    std::vector<Index> out{a};
    out.insert(out.end(), captured.begin(), captured.end());
    out.push_back(c);
    return out;
  }

  std::vector<Index> all = captured;
  all.push_back(a);
  all.push_back(c);
  Hull h = convex_hull(ps, all);
  const auto& bd = h.boundary;
  auto pos_of = [&](Index i) {
    return static_cast<std::size_t>(std::find(bd.begin(), bd.end(), i) - bd.begin());
  };
  std::size_t ia = pos_of(a), ic = pos_of(c);
  if (ia == bd.size() || ic == bd.size())
    throw Error(ErrorKind::DegenerateInput, "chain endpoints not on hull");

  std::vector<Index> chain;
  int side = orient_sign(HPoint(pa), HPoint(pc), apex);
  if (side > 0) {
    // Apex left of a->c: CCW arc from c to a, reversed.
    for (std::size_t i = ic;; i = (i + 1) % bd.size()) {
      chain.push_back(bd[i]);
      if (i == ia) break;
    }
    std::reverse(chain.begin(), chain.end());
  } else {
    for (std::size_t i = ia;; i = (i + 1) % bd.size()) {
      chain.push_back(bd[i]);
      if (i == ic) break;
    }
  }
  return chain;
}

/// Indices of S in the closed triangle (a, apex, c), excluding `exclude`.
inline std::vector<Index> points_in_triangle(const PointSet& ps, const HPoint& a,
                                             const HPoint& apex, const HPoint& c,
                                             std::optional<Index> exclude = std::nullopt) {
  std::vector<Index> out;
  for (Index i = 0; i < ps.size(); ++i) {
    if (exclude && *exclude == i) continue;
    if (in_closed_triangle(ps[i], a, apex, c)) out.push_back(i);
  }
  return out;
}

/// Smallest pairwise distance, maximum convex angle over non-collinear
/// triples, and the per-twang perimeter decrease bound derived from them.
struct GeometryStats {
  double d_min = 0;
  double alpha_max = 0;
  double twang_bound = 0;
};

inline GeometryStats geometry_stats(const PointSet& ps) {
  GeometryStats g;
  const int n = ps.size();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dx = double(ps[i].x - ps[j].x), dy = double(ps[i].y - ps[j].y);
      best = std::min(best, std::hypot(dx, dy));
    }
  g.d_min = best;
  double amax = 0;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      if (a == b) continue;
      for (int c = a + 1; c < n; ++c) {
        if (c == b || orient_sign(ps[a], ps[b], ps[c]) == 0) continue;
        double ux = double(ps[a].x - ps[b].x), uy = double(ps[a].y - ps[b].y);
        double vx = double(ps[c].x - ps[b].x), vy = double(ps[c].y - ps[b].y);
        double ang = std::atan2(std::fabs(ux * vy - uy * vx), ux * vx + uy * vy);
        amax = std::max(amax, ang);
      }
    }
  g.alpha_max = amax;
  g.twang_bound = 2.0 * g.d_min * (1.0 - std::sin(g.alpha_max / 2.0));
  return g;
}

inline double distance(const Point& p, const Point& q) {
  return std::hypot(double(p.x - q.x), double(p.y - q.y));
}

}  // namespace polywrap
