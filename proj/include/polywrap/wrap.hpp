#pragma once
// Polygonal wraps: circular index sequences over a point set that may revisit
// points (double contacts) but never properly cross themselves.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polywrap/errors.hpp"
#include "polywrap/exact.hpp"
#include "polywrap/geometry.hpp"

namespace polywrap {

/// A position in sigma; names one specific occurrence of a point.
using Position = int;

class Wrap {
 public:
  Wrap() = default;

  Wrap(int n, std::vector<Index> sigma) : n_(n), sigma_(std::move(sigma)) {
    if (sigma_.size() < 3) throw Error(ErrorKind::InvalidWrap, "sequence shorter than 3");
    counts_.assign(static_cast<std::size_t>(n_), 0);
    for (Index i : sigma_) {
      if (i < 0 || i >= n_) throw Error(ErrorKind::InvalidWrap, "index out of range");
      ++counts_[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n_; ++i)
      if (counts_[static_cast<std::size_t>(i)] == 0)
        throw Error(ErrorKind::InvalidWrap, "index " + std::to_string(i) + " missing");
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(sigma_.size()); }
  const std::vector<Index>& sigma() const { return sigma_; }

  Position wrap_pos(long p) const {
    long m = static_cast<long>(sigma_.size());
    return static_cast<Position>(((p % m) + m) % m);
  }
  Index at(long p) const { return sigma_[static_cast<std::size_t>(wrap_pos(p))]; }
  Index prev(Position p) const { return at(p - 1); }
  Index next(Position p) const { return at(p + 1); }

  int count(Index i) const { return counts_[static_cast<std::size_t>(i)]; }
  bool is_polygonization() const { return size() == n_; }

  std::vector<Position> positions_of(Index i) const {
    std::vector<Position> out;
    for (int p = 0; p < size(); ++p)
      if (sigma_[static_cast<std::size_t>(p)] == i) out.push_back(p);
    return out;
  }

  /// Points occurring at least twice, ascending.
  std::vector<Index> double_contacts() const {
    std::vector<Index> out;
    for (int i = 0; i < n_; ++i)
      if (counts_[static_cast<std::size_t>(i)] >= 2) out.push_back(i);
    return out;
  }

  /// Replaces the element at `p` by `interior` (possibly empty).
  void replace_at(Position p, std::span<const Index> interior) {
    --counts_[static_cast<std::size_t>(sigma_[static_cast<std::size_t>(p)])];
    sigma_.erase(sigma_.begin() + p);
    sigma_.insert(sigma_.begin() + p, interior.begin(), interior.end());
    for (Index i : interior) ++counts_[static_cast<std::size_t>(i)];
  }

  /// Inserts `items` before position p (p may equal size()).
  void insert_at(Position p, std::span<const Index> items) {
    sigma_.insert(sigma_.begin() + p, items.begin(), items.end());
    for (Index i : items) ++counts_[static_cast<std::size_t>(i)];
  }

  /// Erases `len` elements starting at p (no wrap-around).
  void erase_at(Position p, int len) {
    for (int k = 0; k < len; ++k) --counts_[static_cast<std::size_t>(sigma_[static_cast<std::size_t>(p + k)])];
    sigma_.erase(sigma_.begin() + p, sigma_.begin() + p + len);
  }

  void rotate_to_match(const std::vector<Index>& target);

  friend bool operator==(const Wrap& a, const Wrap& b) { return a.sigma_ == b.sigma_ && a.n_ == b.n_; }

 private:
  int n_ = 0;
  std::vector<Index> sigma_;
  std::vector<int> counts_;
};

/// Same circular sequence: equal up to rotation only (direction and
/// multiplicities preserved).
inline std::optional<std::size_t> rotation_offset(const std::vector<Index>& a,
                                                  const std::vector<Index>& b) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t m = a.size();
  for (std::size_t off = 0; off < m; ++off) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = a[(i + off) % m] == b[i];
    if (ok) return off;
  }
  return std::nullopt;
}

inline bool same_cycle(const std::vector<Index>& a, const std::vector<Index>& b) {
  return rotation_offset(a, b).has_value();
}

inline void Wrap::rotate_to_match(const std::vector<Index>& target) {
  auto off = rotation_offset(sigma_, target);
  if (!off) throw Error(ErrorKind::ReversalMismatch, "sequence is not a rotation of target");
  std::rotate(sigma_.begin(), sigma_.begin() + static_cast<long>(*off), sigma_.end());
}

/// Polygonizations equal up to rotation and reversal.
inline bool cyclic_equal(const std::vector<Index>& p, const std::vector<Index>& q) {
  if (same_cycle(p, q)) return true;
  std::vector<Index> r(q.rbegin(), q.rend());
  return same_cycle(p, r);
}

inline bool cyclic_equal(const Wrap& p, const Wrap& q) { return cyclic_equal(p.sigma(), q.sigma()); }

/// Canonical representative under rotation and reversal (lexicographically
/// smallest); used for deduplication.
inline std::vector<Index> canonical_cycle(const std::vector<Index>& s) {
  std::vector<Index> best;
  const std::size_t m = s.size();
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<Index> base = s;
    if (dir == 1) std::reverse(base.begin(), base.end());
    for (std::size_t off = 0; off < m; ++off) {
      std::vector<Index> cand(m);
      for (std::size_t i = 0; i < m; ++i) cand[i] = base[(i + off) % m];
      if (best.empty() || cand < best) best = std::move(cand);
    }
  }
  return best;
}

/// FNV-1a digest of the sequence, for journal boundary checks.
inline std::uint64_t digest(const std::vector<Index>& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (Index i : s) {
    auto v = static_cast<std::uint32_t>(i);
    for (int k = 0; k < 4; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

/// True iff `order` (a permutation of 0..n-1) is a simple polygon: no two
/// edges share a point other than a common endpoint of adjacent edges.
inline bool is_simple(std::span<const Index> order, const PointSet& ps) {
  const int m = static_cast<int>(order.size());
  if (m != ps.size()) return false;
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (Index i : order) {
    if (i < 0 || i >= m || seen[static_cast<std::size_t>(i)]) return false;
    seen[static_cast<std::size_t>(i)] = 1;
  }
  auto P = [&](int k) { return ps[order[static_cast<std::size_t>(((k % m) + m) % m)]]; };
  for (int i = 0; i < m; ++i) {
    // Point-on-edge: no vertex in the closed edge other than its endpoints.
    for (int k = 0; k < m; ++k) {
      if (k == i || k == (i + 1) % m) continue;
      if (on_segment(P(i), P(i + 1), P(k))) return false;
    }
    // Adjacent edges must not fold back onto each other.
    if (orient_sign(P(i - 1), P(i), P(i + 1)) == 0 && dot(P(i), P(i - 1), P(i + 1)) > 0)
      return false;
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      if (segments_intersect(P(i), P(i + 1), P(j), P(j + 1))) return false;
    }
  }
  return true;
}

inline bool is_simple(const Wrap& w, const PointSet& ps) {
  return w.is_polygonization() && is_simple(w.sigma(), ps);
}

struct WeakCheck {
  bool ok = true;
  std::string description;
  explicit operator bool() const { return ok; }
};

/// Necessary conditions for weak simplicity: no two edges properly cross and
/// no point of S lies strictly inside an edge.  Exactly overlapping (doubled)
/// edges and touching at shared vertices are permitted.
inline WeakCheck weak_simplicity_check(const Wrap& w, const PointSet& ps) {
  const int m = w.size();
  struct Seg {
    Point p, q;
    std::int64_t xmin, xmax, ymin, ymax;
    Index a, b;
  };
  std::vector<Seg> segs;
  segs.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Index a = w.at(i), b = w.at(i + 1);
    if (a == b) return {false, "zero-length edge at position " + std::to_string(i)};
    const Point &p = ps[a], &q = ps[b];
    segs.push_back({p, q, std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y),
                    std::max(p.y, q.y), a, b});
  }
  for (int i = 0; i < m; ++i) {
    const Seg& s = segs[static_cast<std::size_t>(i)];
    for (Index k = 0; k < ps.size(); ++k) {
      const Point& r = ps[k];
      if (r.x < s.xmin || r.x > s.xmax || r.y < s.ymin || r.y > s.ymax) continue;
      if (in_segment_interior(s.p, s.q, r))
        return {false, "point " + std::to_string(k) + " inside edge at position " + std::to_string(i)};
    }
    for (int j = i + 1; j < m; ++j) {
      const Seg& t = segs[static_cast<std::size_t>(j)];
      if (t.xmax < s.xmin || t.xmin > s.xmax || t.ymax < s.ymin || t.ymin > s.ymax) continue;
      if (properly_cross(s.p, s.q, t.p, t.q))
        return {false, "edges at positions " + std::to_string(i) + " and " + std::to_string(j) +
                           " properly cross"};
    }
  }
  return {};
}

inline double perimeter(const Wrap& w, const PointSet& ps) {
  double total = 0;
  for (int i = 0; i < w.size(); ++i) total += distance(ps[w.at(i)], ps[w.at(i + 1)]);
  return total;
}

}  // namespace polywrap
