#pragma once
// Random point sets, the one-pocket starting polygonization and the
// brute-force polygonization enumerator.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polywrap/geometry.hpp"
#include "polywrap/moves.hpp"
#include "polywrap/transforms.hpp"
#include "polywrap/wrap.hpp"

namespace polywrap {

/// n distinct points uniform on {0..scale-1}^2.  With `general_position` no
/// three points are collinear.
inline PointSet random_points(int n, std::uint64_t seed, std::int64_t scale = 1000,
                              bool general_position = false) {
  if (n < 3) throw Error(ErrorKind::PreconditionViolated, "need at least 3 points");
  if (scale < 2 || scale > kCoordLimit) throw Error(ErrorKind::PreconditionViolated, "bad scale");
  if (static_cast<std::int64_t>(n) > scale * scale / 2)
    throw Error(ErrorKind::PreconditionViolated, "grid too small for n points");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(0, scale - 1);
  std::vector<Point> pts;
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  long long attempts = 0;
  while (static_cast<int>(pts.size()) < n) {
    if (++attempts > 1000LL * n + 100000)
      throw Error(ErrorKind::GenerationFailed, "rejection sampling did not converge");
    Point p{coord(rng), coord(rng)};
    if (used.count({p.x, p.y})) continue;
    bool ok = true;
    if (general_position)
      for (std::size_t i = 0; i < pts.size() && ok; ++i)
        for (std::size_t j = i + 1; j < pts.size() && ok; ++j) ok = orient_sign(pts[i], pts[j], p) != 0;
    // The last point must not leave the whole set collinear.
    if (ok && static_cast<int>(pts.size()) == n - 1) {
      bool all = true;
      for (std::size_t i = 2; i < pts.size() && all; ++i) all = orient_sign(pts[0], pts[1], pts[i]) == 0;
      ok = !(all && orient_sign(pts[0], pts[1], p) == 0);
    }
    if (!ok) continue;
    used.insert({p.x, p.y});
    pts.push_back(p);
  }
  return PointSet(std::move(pts));
}

/// The canonical one-pocket polygonization P_c(a, b) built directly: the hull
/// boundary from b around to a, then the remaining points in canonical order.
inline std::vector<Index> initial_polygonization(const PointSet& ps, Index a, Index b) {
  const auto& hb = convex_hull(ps).boundary;
  const std::size_t h = hb.size();
  auto ia = static_cast<std::size_t>(std::find(hb.begin(), hb.end(), a) - hb.begin());
  if (ia == h) throw Error(ErrorKind::PreconditionViolated, "lid endpoint not on the hull");
  int dir;
  if (hb[(ia + 1) % h] == b) {
    dir = 1;
  } else if (hb[(ia + h - 1) % h] == b) {
    dir = -1;
  } else {
    throw Error(ErrorKind::PreconditionViolated, "lid is not a hull edge");
  }
  std::vector<Index> out;
  for (std::size_t k = 1; k <= h; ++k) out.push_back(hb[(ia + h + static_cast<std::size_t>(dir) * k) % h]);
  std::vector<char> on(static_cast<std::size_t>(ps.size()), 0);
  for (Index i : hb) on[static_cast<std::size_t>(i)] = 1;
  std::vector<Index> rest;
  for (Index i = 0; i < ps.size(); ++i)
    if (!on[static_cast<std::size_t>(i)]) rest.push_back(i);
  for (Index i : canonical_order(ps, a, b, rest)) out.push_back(i);
  if (!is_simple(out, ps)) throw Error(ErrorKind::InvariantViolated, "initial polygonization is not simple");
  return out;
}

inline std::vector<Index> initial_polygonization(const PointSet& ps) {
  auto e = lowest_hull_edge(ps);
  return initial_polygonization(ps, e.first, e.second);
}

namespace detail {

struct Enumerator {
  const PointSet& ps;
  int n;
  std::vector<Index> path;
  std::vector<char> used;
  std::vector<std::vector<Index>> out;

  // Edge (path.back(), x) keeps the open path simple.
  bool extends(Index x) const {
    const Index last = path.back();
    const Point &p = ps[last], &q = ps[x];
    for (Index k = 0; k < n; ++k)
      if (k != last && k != x && on_segment(p, q, ps[k])) return false;
    const std::size_t m = path.size();
    if (m >= 2) {
      const Point& r = ps[path[m - 2]];
      if (orient_sign(r, p, q) == 0 && dot(p, r, q) > 0) return false;
    }
    for (std::size_t i = 0; i + 2 < m; ++i)
      if (segments_intersect(ps[path[i]], ps[path[i + 1]], p, q)) return false;
    return true;
  }

  void run() {
    if (static_cast<int>(path.size()) == n) {
      if (path[1] < path.back() && is_simple(path, ps)) out.push_back(path);
      return;
    }
    for (Index x = 1; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)] || !extends(x)) continue;
      used[static_cast<std::size_t>(x)] = 1;
      path.push_back(x);
      run();
      path.pop_back();
      used[static_cast<std::size_t>(x)] = 0;
    }
  }
};

}  // namespace detail

/// Every polygonization of S (n <= 10), one per undirected cycle, each in
/// canonical_cycle form, sorted.
inline std::vector<std::vector<Index>> enumerate_polygonizations(const PointSet& ps) {
  const int n = ps.size();
  if (n > 10) throw Error(ErrorKind::TooLarge, "enumeration is limited to n <= 10");
  detail::Enumerator en{ps, n, {0}, std::vector<char>(static_cast<std::size_t>(n), 0), {}};
  en.used[0] = 1;
  en.run();
  for (auto& p : en.out) p = canonical_cycle(p);
  std::sort(en.out.begin(), en.out.end());
  en.out.erase(std::unique(en.out.begin(), en.out.end()), en.out.end());
  return en.out;
}

namespace detail {

inline Point snap(double x, double y) { return Point{std::llround(x), std::llround(y)}; }

inline PointSet make_points(std::vector<Point> pts) {
  try {
    return PointSet(std::move(pts));
  } catch (const Error& e) {
    throw Error(ErrorKind::GenerationFailed, std::string("snapped points invalid: ") + e.what());
  }
}

}  // namespace detail

/// k gadgets between two anchors on the x-axis, each a pair of raised
/// points with a lower middle point that can join either side.
inline PointSet gen_pow2k(int k) {
  if (k < 1) throw Error(ErrorKind::PreconditionViolated, "k must be at least 1");
  const std::int64_t len = 6 * static_cast<std::int64_t>(k) + 6;
  if (len > kCoordLimit) throw Error(ErrorKind::PreconditionViolated, "k too large");
  std::vector<Point> pts{{0, 0}, {len, 0}};
  for (int i = 0; i < k; ++i) {
    const std::int64_t x = 6 * static_cast<std::int64_t>(i) + 6;
    pts.push_back({x - 1, 4});
    pts.push_back({x + 1, 4});
    pts.push_back({x, 1});
  }
  return PointSet(std::move(pts));
}

struct PocketChain {
  PointSet points;
  std::vector<Index> order;
  std::vector<std::pair<Index, Index>> lids;  // m pocket lids, then the target edge
};

/// m shallow pockets of r vertices each plus a bare target edge, spaced
/// around a circle of radius `scale`.  Reducing every pocket into the
/// target edge shifts each pocket's vertices through all later pockets.
inline PocketChain gen_pocket_chain(int m, int r, std::int64_t scale = 100000) {
  if (m < 2) throw Error(ErrorKind::PreconditionViolated, "need at least two pockets");
  if (r < 1) throw Error(ErrorKind::PreconditionViolated, "need at least one vertex per pocket");
  if (scale < 1000 || scale > kCoordLimit) throw Error(ErrorKind::PreconditionViolated, "bad scale");
  const double pi = std::numbers::pi, R = static_cast<double>(scale);
  const double halfw = std::min(0.25, 0.5 * pi / (m + 1)), depth = 0.08 * halfw * R;
  const int slots = m + 1;
  std::vector<Point> pts;
  PocketChain out;
  auto at = [&](double ang, double rad) { return detail::snap(rad * std::cos(ang), rad * std::sin(ang)); };
  for (int j = 0; j < slots; ++j) {
    const double c = pi + 2 * pi * j / slots + halfw;
    const double a0 = c - halfw, a1 = c + halfw;
    const auto first = static_cast<Index>(pts.size());
    pts.push_back(at(a0, R));
    out.order.push_back(first);
    if (j < m) {
      for (int i = 1; i <= r; ++i) {
        const double f = static_cast<double>(i) / (r + 1);
        const double ang = a0 + (a1 - a0) * f;
        // On the lid chord, pushed inward.
        const double rad = R * std::cos(halfw) / std::cos(ang - c) - depth * std::sin(pi * f);
        pts.push_back(at(ang, rad));
        out.order.push_back(static_cast<Index>(pts.size()) - 1);
      }
    }
    const auto last = static_cast<Index>(pts.size());
    pts.push_back(at(a1, R));
    out.order.push_back(last);
    out.lids.push_back({first, last});
  }
  out.points = detail::make_points(std::move(pts));
  if (!is_simple(out.order, out.points))
    throw Error(ErrorKind::GenerationFailed, "pocket chain is not simple at this scale");
  return out;
}

/// Pinwheel of k arms (k even): pins b_i evenly spaced on a circle, arm
/// legs b_i->a_i outward and b_i->c_i inward at a right angle.  Neighbouring
/// arms run in opposite directions so the polygon alternates inner and outer
/// connections.
struct Pinwheel {
  PointSet points;
  std::vector<Index> order;
  int arms = 0;
};

namespace detail {

struct PinwheelShape {
  double beta = 75.0 * std::numbers::pi / 180.0;  // outer leg angle from the tangent
  double outer = 3.0;                             // |a_i b_i| in radii
  double inner = 0.49;                            // |b_i c_i| as a fraction of the chord
};

inline std::vector<Point> pinwheel_points(int k, double rho, const PinwheelShape& sh = {}) {
  const double pi = std::numbers::pi;
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) {
    const double th = 2 * pi * i / k;
    const double bx = rho * std::cos(th), by = rho * std::sin(th);
    const double d1 = th + sh.beta, d2 = d1 + pi / 2;
    const double chord = 2 * rho * std::cos(d2 - (th + pi));
    pts.push_back(snap(bx + sh.outer * rho * std::cos(d1), by + sh.outer * rho * std::sin(d1)));
    pts.push_back(snap(bx, by));
    pts.push_back(snap(bx + sh.inner * chord * std::cos(d2), by + sh.inner * chord * std::sin(d2)));
  }
  return pts;
}

inline std::vector<Index> pinwheel_order(int k) {
  std::vector<Index> order;
  for (int i = 0; i < k; i += 2) {
    for (int t = 0; t < 3; ++t) order.push_back(3 * i + t);
    for (int t = 2; t >= 0; --t) order.push_back(3 * (i + 1) + t);
  }
  return order;
}

// Rotational symmetry: every arm triangle must hold the same number of pins,
// and the pins it holds must be the ones right after it.
inline void check_pinwheel(const PointSet& ps, const std::vector<Index>& order, int k) {
  if (!is_simple(order, ps)) throw Error(ErrorKind::GenerationFailed, "pinwheel is not simple at this scale");
  int expected = -1;
  for (int i = 0; i < k; ++i) {
    int held = 0;
    for (int j = 1; j < k; ++j) {
      const Index pin = 3 * ((i + j) % k) + 1;
      if (!in_closed_triangle(ps[pin], ps[3 * i], ps[3 * i + 1], ps[3 * i + 2])) continue;
      if (held != j - 1) throw Error(ErrorKind::GenerationFailed, "arm triangle holds a pin out of sequence");
      ++held;
    }
    if (expected >= 0 && held != expected)
      throw Error(ErrorKind::GenerationFailed, "snapping changed the pins held by an arm");
    expected = held;
  }
}

}  // namespace detail

inline Pinwheel gen_pinwheel(int k, std::int64_t scale = 100000) {
  if (k < 4 || k % 2) throw Error(ErrorKind::PreconditionViolated, "pinwheel needs an even number of arms >= 4");
  if (scale < 1000 || 4 * scale > kCoordLimit) throw Error(ErrorKind::PreconditionViolated, "bad scale");
  Pinwheel pw;
  pw.arms = k;
  pw.points = detail::make_points(detail::pinwheel_points(k, static_cast<double>(scale)));
  pw.order = detail::pinwheel_order(k);
  detail::check_pinwheel(pw.points, pw.order, k);
  return pw;
}

struct CascadeInstance {
  PointSet points;
  std::vector<Index> order;
  Index edge_a = -1, edge_b = -1;  // stretch edge, as it occurs in order
  Index v = -1;                    // stretched vertex
  int arms = 0;
};

/// Twang counts per vertex of one forward move.
inline std::map<Index, int> twangs_per_vertex(const MoveRecord& rec) {
  std::map<Index, int> out;
  for (const auto& ev : rec.events)
    if (ev.kind == EventKind::Twang) ++out[ev.b];
  return out;
}

inline int max_twangs_per_vertex(const MoveRecord& rec) {
  int m = 0;
  for (auto [b, c] : twangs_per_vertex(rec)) m = std::max(m, c);
  return m;
}

namespace detail {

struct CascadeTrial {
  int twangs = -1;
  int per_vertex = 0;
  Position edge_pos = -1;
  Index v = -1;
};

inline CascadeTrial run_cascade_trial(const PointSet& ps, const std::vector<Index>& order, Position e, Index v) {
  Wrap w(ps.size(), order);
  if (!forward_move_valid(w, ps, e, v)) return {};
  MoveEngine eng(ps, w);
  try {
    auto rec = forward_move(eng, e, v);
    return {rec.twang_count(), max_twangs_per_vertex(rec), e, v};
  } catch (const Error&) {
    return {};
  }
}

inline CascadeTrial best_cascade(const PointSet& ps, const std::vector<Index>& order) {
  CascadeTrial best;
  for (Position e = 0; e < static_cast<Position>(order.size()); ++e)
    for (Index v = 0; v < ps.size(); ++v) {
      CascadeTrial t = run_cascade_trial(ps, order, e, v);
      if (t.per_vertex >= 2 && (best.per_vertex < 2 || t.twangs > best.twangs)) best = t;
      else if (best.per_vertex < 2 && t.twangs > best.twangs) best = t;
    }
  return best;
}

}  // namespace detail

/// Pinwheel with the largest even arm count k, 3k + 1 <= n, plus a trigger
/// point t between the inner ends of arms 2 and 3.  Stretching a_3 into edge
/// (t, c_3) sends an extra pass around the pins, and every arm steps forward
/// once per lap for as long as its triangle still holds pins ahead.  The
/// leftover points sit on the outer connection between a_{k-1} and a_0.  When
/// that layout gives no vertex a second twang (few arms), the leftover points
/// are re-placed by a seeded search.
inline CascadeInstance gen_quadratic_cascade(int n, std::uint64_t seed = 1, std::int64_t scale = 100000) {
  if (n < 13) throw Error(ErrorKind::PreconditionViolated, "quadratic cascade needs n >= 13");
  if (scale < 1000 || 4 * scale > kCoordLimit) throw Error(ErrorKind::PreconditionViolated, "bad scale");
  int k = (n - 1) / 3;
  if (k % 2) --k;
  const int pads = n - 3 * k - 1;
  const double pi = std::numbers::pi, rho = static_cast<double>(scale);
  const int i0 = 2;

  std::vector<Point> pts = detail::pinwheel_points(k, rho);
  const double ta = 2 * pi * (i0 + 0.65) / k;
  pts.push_back(detail::snap(1.05 * rho * std::cos(ta), 1.05 * rho * std::sin(ta)));
  const auto t = static_cast<Index>(pts.size()) - 1;
  std::vector<Index> base = detail::pinwheel_order(k);
  base.insert(base.begin() + 3 * i0 + 3, t);

  {
    PointSet core = detail::make_points(pts);
    std::vector<Index> core_order = base;
    core_order.erase(std::find(core_order.begin(), core_order.end(), t));
    std::vector<Point> arm_pts(pts.begin(), pts.end() - 1);
    detail::check_pinwheel(detail::make_points(arm_pts), core_order, k);
    if (!is_simple(base, core)) throw Error(ErrorKind::GenerationFailed, "trigger breaks simplicity");
  }

  // Leftover points bulge slightly outward from the segment a_{k-1} a_0.
  std::vector<Point> padded = pts;
  std::vector<Index> order = base;
  {
    const Point p = pts[static_cast<std::size_t>(3 * (k - 1))], q = pts[0];
    const double dx = static_cast<double>(q.x - p.x), dy = static_cast<double>(q.y - p.y);
    const double len = std::hypot(dx, dy);
    const double nx = dy / len, ny = -dx / len;  // outward: the pinwheel is to the left of p->q
    for (int j = 1; j <= pads; ++j) {
      const double f = static_cast<double>(j) / (pads + 1);
      const double bump = 0.01 * rho * std::sin(pi * f);
      padded.push_back(detail::snap(p.x + f * dx + bump * nx, p.y + f * dy + bump * ny));
      order.push_back(static_cast<Index>(padded.size()) - 1);
    }
  }
  CascadeInstance out;
  out.arms = k;
  out.points = detail::make_points(padded);
  if (!is_simple(order, out.points)) throw Error(ErrorKind::GenerationFailed, "padding breaks simplicity");
  out.order = order;
  const Position trig = static_cast<Position>(std::find(order.begin(), order.end(), t) - order.begin());
  const Index v = 3 * (i0 + 1);
  detail::CascadeTrial best = detail::run_cascade_trial(out.points, order, trig, v);
  if (best.twangs < 0) throw Error(ErrorKind::GenerationFailed, "trigger move is not valid at this scale");

  if (best.per_vertex < 2 && pads > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2 * rho, 2 * rho);
    for (int attempt = 0; attempt < 4000; ++attempt) {
      std::vector<Point> cand = pts;
      std::vector<Index> cord = base;
      bool ok = true;
      for (int j = 0; j < pads && ok; ++j) {
        cand.push_back(detail::snap(coord(rng), coord(rng)));
        PointSet ps;
        try {
          ps = PointSet(cand);
        } catch (const Error&) {
          ok = false;
          break;
        }
        ok = false;
        for (int tries = 0; tries < 20 && !ok; ++tries) {
          auto o = cord;
          o.insert(o.begin() + static_cast<long>(rng() % o.size()) + 1, static_cast<Index>(cand.size()) - 1);
          if (is_simple(o, ps)) {
            cord = std::move(o);
            ok = true;
          }
        }
      }
      if (!ok) continue;
      PointSet ps(cand);
      detail::CascadeTrial trial = detail::best_cascade(ps, cord);
      if (trial.per_vertex >= 2) {
        out.points = std::move(ps);
        out.order = std::move(cord);
        best = trial;
        break;
      }
    }
  }
  Wrap w(out.points.size(), out.order);
  out.edge_a = w.at(best.edge_pos);
  out.edge_b = w.at(best.edge_pos + 1);
  out.v = best.v;
  return out;
}

enum class Family { Pow2k, QuadCascade, Pinwheel, PocketChain, Random };

inline std::optional<Family> parse_family(const std::string& s) {
  static const std::map<std::string, Family> names{{"POW2K", Family::Pow2k},
                                                   {"QUADCASCADE", Family::QuadCascade},
                                                   {"PINWHEEL", Family::Pinwheel},
                                                   {"POCKETCHAIN", Family::PocketChain},
                                                   {"RANDOM", Family::Random}};
  std::string up = s;
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  auto it = names.find(up);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Pow2k: return "POW2K";
    case Family::QuadCascade: return "QUADCASCADE";
    case Family::Pinwheel: return "PINWHEEL";
    case Family::PocketChain: return "POCKETCHAIN";
    case Family::Random: return "RANDOM";
  }
  return "?";
}

/// size is k for POW2K, the arm count for PINWHEEL, the pocket count for
/// POCKETCHAIN (3 vertices per pocket) and n otherwise.
struct FamilySpec {
  Family family = Family::Random;
  int size = 0;
  std::uint64_t seed = 0;
  std::int64_t scale = 0;  // 0: the family default
};

struct FamilyInstance {
  PointSet points;
  std::vector<Index> order;  // a polygonization when the family provides one
  std::optional<std::pair<Index, Index>> stretch_edge;
  std::optional<Index> stretch_vertex;
  std::vector<std::pair<Index, Index>> lids;
};

inline FamilyInstance generate(const FamilySpec& spec) {
  FamilyInstance out;
  switch (spec.family) {
    case Family::Pow2k:
      out.points = gen_pow2k(spec.size);
      break;
    case Family::QuadCascade: {
      auto q = gen_quadratic_cascade(spec.size, spec.seed, spec.scale ? spec.scale : 100000);
      out.points = q.points;
      out.order = q.order;
      out.stretch_edge = std::pair{q.edge_a, q.edge_b};
      out.stretch_vertex = q.v;
      break;
    }
    case Family::Pinwheel: {
      auto p = gen_pinwheel(spec.size, spec.scale ? spec.scale : 100000);
      out.points = p.points;
      out.order = p.order;
      break;
    }
    case Family::PocketChain: {
      auto c = gen_pocket_chain(spec.size, 3, spec.scale ? spec.scale : 100000);
      out.points = c.points;
      out.order = c.order;
      out.lids = c.lids;
      break;
    }
    case Family::Random:
      out.points = random_points(spec.size, spec.seed, spec.scale ? spec.scale : 1000);
      break;
  }
  return out;
}


}  // namespace polywrap
