#pragma once
// Exact integer / homogeneous-rational predicates for planar points.
//
// Input coordinates are bounded by kCoordLimit, so every orientation on
// integer points fits in 64 bits.  Homogeneous points (x/w, y/w) appear only
// transiently (stretch targets on an edge) and their weight is bounded by
// kMaxWeight; predicates mixing at most one such point with integer points
// stay inside 128-bit arithmetic.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace polywrap {

using i128 = __int128;

inline constexpr std::int64_t kCoordLimit = std::int64_t{1} << 20;
inline constexpr std::int64_t kMaxWeight = std::int64_t{1} << 38;

/// Integer grid point.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Exact rational point (x/w, y/w) with w > 0.
struct HPoint {
  i128 x = 0;
  i128 y = 0;
  i128 w = 1;

  HPoint() = default;
  HPoint(i128 x_, i128 y_, i128 w_) : x(x_), y(y_), w(w_) {}
  HPoint(const Point& p) : x(p.x), y(p.y), w(1) {}  // NOLINT(google-explicit-constructor)
};

enum class Orientation : int { CW = -1, Collinear = 0, CCW = 1 };

inline int sign(i128 v) { return (v > 0) - (v < 0); }
inline int sign(std::int64_t v) { return (v > 0) - (v < 0); }

/// Twice the signed area of (p, q, r).
inline std::int64_t cross(const Point& p, const Point& q, const Point& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

inline std::int64_t dot(const Point& p, const Point& q, const Point& r) {
  return (q.x - p.x) * (r.x - p.x) + (q.y - p.y) * (r.y - p.y);
}

inline int orient_sign(const Point& p, const Point& q, const Point& r) {
  return sign(cross(p, q, r));
}

inline Orientation orient(const Point& p, const Point& q, const Point& r) {
  return static_cast<Orientation>(orient_sign(p, q, r));
}

// Homogeneous orientation: sign of det [[px py pw] [qx qy qw] [rx ry rw]],
// all weights positive.
inline int orient_sign(const HPoint& p, const HPoint& q, const HPoint& r) {
  i128 d = p.x * (q.y * r.w - r.y * q.w) - p.y * (q.x * r.w - r.x * q.w) +
           p.w * (q.x * r.y - r.x * q.y);
  return sign(d);
}

/// Sign of (q - p) . (r - p) for homogeneous points.
inline int dot_sign(const HPoint& p, const HPoint& q, const HPoint& r) {
  // (q - p) scaled by q.w * p.w > 0, likewise (r - p).
  i128 ux = q.x * p.w - p.x * q.w, uy = q.y * p.w - p.y * q.w;
  i128 vx = r.x * p.w - p.x * r.w, vy = r.y * p.w - p.y * r.w;
  return sign(ux * vx + uy * vy);
}

inline bool same_point(const HPoint& a, const HPoint& b) {
  return a.x * b.w == b.x * a.w && a.y * b.w == b.y * a.w;
}

/// Closed-segment membership of p on [a, b] (p assumed distinct handling is
/// exact: endpoints count as on-segment).
inline bool on_segment(const HPoint& a, const HPoint& b, const HPoint& p) {
  if (orient_sign(a, b, p) != 0) return false;
  return dot_sign(p, a, b) <= 0;
}

/// Strict interior of segment [a, b].
inline bool in_segment_interior(const HPoint& a, const HPoint& b, const HPoint& p) {
  if (orient_sign(a, b, p) != 0) return false;
  return dot_sign(p, a, b) < 0;
}

/// Closed segments [p1,p2] and [q1,q2] share at least one point.
inline bool segments_intersect(const HPoint& p1, const HPoint& p2, const HPoint& q1,
                               const HPoint& q2) {
  int o1 = orient_sign(p1, p2, q1), o2 = orient_sign(p1, p2, q2);
  int o3 = orient_sign(q1, q2, p1), o4 = orient_sign(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

/// Two segments cross transversally at a point interior to both.
inline bool properly_cross(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  int o1 = orient_sign(p1, p2, q1), o2 = orient_sign(p1, p2, q2);
  int o3 = orient_sign(q1, q2, p1), o4 = orient_sign(q1, q2, p2);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Exact fraction num/den with den > 0; used for edge parameters.
struct Fraction {
  i128 num = 0;
  i128 den = 1;

  Fraction() = default;
  Fraction(i128 n, i128 d) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }

  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
  long double approx() const {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }
};

inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Simplest rational strictly inside the open interval (lo, hi), lo < hi.
/// "Simplest" means smallest denominator (continued-fraction descent).
inline Fraction simplest_between(Fraction lo, Fraction hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  i128 fl = floor_div(lo.num, lo.den);
  // Smallest integer strictly greater than lo.
  i128 next = fl + 1;
  if (Fraction(next, 1) < hi) return {next, 1};
  // Interval lies within [fl, fl + 1].
  i128 ln = lo.num - fl * lo.den, hn = hi.num - fl * hi.den;
  if (ln == 0) {
    // (0, hn/hd): 1/k with k = floor(hd/hn) + 1.
    i128 k = hi.den / hn + 1;
    return {fl * k + 1, k};
  }
  // Reciprocal interval (hd/hn, ld/ln).
  Fraction r = simplest_between(Fraction(hi.den, hn), Fraction(lo.den, ln));
  // fl + 1/r = fl + r.den/r.num
  return {fl * r.num + r.den, r.num};
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (neg ? -digit : digit)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

}  // namespace polywrap
