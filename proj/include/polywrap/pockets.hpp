#pragma once
// Pockets, the pocket hierarchy tree, pocket counts and pocket vectors.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "polywrap/geometry.hpp"
#include "polywrap/wrap.hpp"

namespace polywrap {

/// One node of the pocket hierarchy.  The root (level 1) is the whole wrap;
/// every other node is the sub-chain of its parent's chain under a lid.
struct PocketNode {
  int level = 1;
  Index lid_a = -1, lid_b = -1;       // -1 for the root
  std::vector<Index> chain;           // lid_a .. lid_b along sigma (root: cyclic, first repeated at end)
  std::vector<Index> hull;            // chain points on the hull boundary, CCW
  std::vector<Index> interior;        // other points of S in the closed hull
  int count = 0;                      // S(): points of S on or in the hull
  ConvexRegion region;
  std::vector<PocketNode> children;
};

using PocketVector = std::vector<int>;

namespace detail {

inline std::vector<Index> distinct(const std::vector<Index>& v) {
  std::vector<Index> out = v;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

using EdgeSet = std::vector<std::pair<Index, Index>>;  // sorted undirected wrap edges

inline std::pair<Index, Index> ukey(Index a, Index b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

inline EdgeSet wrap_edges(const Wrap& w) {
  EdgeSet out;
  for (Position i = 0; i < w.size(); ++i) out.push_back(ukey(w.at(i), w.at(i + 1)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool has_edge(const EdgeSet& e, Index a, Index b) {
  return std::binary_search(e.begin(), e.end(), ukey(a, b));
}

// Hull boundary of the points, CCW with collinear points.  For collinear
// input the points are returned in order along their line.
inline std::vector<Index> hull_boundary_of(const PointSet& ps, const std::vector<Index>& pts,
                                           bool& degenerate) {
  bool collinear = true;
  for (std::size_t i = 2; i < pts.size() && collinear; ++i)
    collinear = orient_sign(ps[pts[0]], ps[pts[1]], ps[pts[i]]) == 0;
  degenerate = pts.size() < 3 || collinear;
  if (!degenerate) return convex_hull(ps, pts).boundary;
  std::vector<Index> out = pts;
  std::sort(out.begin(), out.end(), [&](Index u, Index v) { return ps[u] < ps[v]; });
  return out;
}

// Window of the chain between the two lid endpoints.  Windows free of the
// node's other hull points are preferred, then shorter ones.
inline std::optional<std::pair<std::size_t, std::size_t>> lid_window(const std::vector<Index>& chain,
                                                                     Index a, Index b,
                                                                     const std::vector<char>& on_hull) {
  std::vector<int> hull_prefix(chain.size() + 1, 0);
  for (std::size_t k = 0; k < chain.size(); ++k)
    hull_prefix[k + 1] = hull_prefix[k] + (on_hull[static_cast<std::size_t>(chain[k])] && chain[k] != a && chain[k] != b);
  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::pair<bool, std::size_t> best_key{};
  std::optional<std::size_t> last_a, last_b;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    std::optional<std::size_t> other;
    if (chain[k] == a) {
      other = last_b;
      last_a = k;
    } else if (chain[k] == b) {
      other = last_a;
      last_b = k;
    } else {
      continue;
    }
    if (!other) continue;
    std::pair<bool, std::size_t> key{hull_prefix[k] != hull_prefix[*other + 1], k - *other};
    if (!best || key < best_key) {
      best = std::make_pair(*other, k);
      best_key = key;
    }
  }
  return best;
}

inline void fill_node(const PointSet& ps, const EdgeSet& edges, PocketNode& node, bool is_root) {
  const std::vector<Index> pts = distinct(node.chain);
  node.region = ConvexRegion(ps, pts);
  bool degenerate = false;
  node.hull = hull_boundary_of(ps, pts, degenerate);
  std::vector<char> on(static_cast<std::size_t>(ps.size()), 0);
  for (Index i : node.hull) on[static_cast<std::size_t>(i)] = 1;
  node.interior.clear();
  for (Index i = 0; i < ps.size(); ++i)
    if (!on[static_cast<std::size_t>(i)] && node.region.contains(ps[i])) node.interior.push_back(i);
  node.count = static_cast<int>(node.hull.size() + node.interior.size());

  // Every hull edge that is not a wrap edge (and not the node's own lid)
  // is the lid of a subpocket holding the chain between its endpoints.
  const std::size_t h = node.hull.size();
  const std::size_t lids = degenerate ? (h == 0 ? 0 : h - 1) : h;
  for (std::size_t k = 0; k < lids; ++k) {
    Index a = node.hull[k], b = node.hull[(k + 1) % h];
    if (has_edge(edges, a, b)) continue;
    if (!is_root && ukey(a, b) == ukey(node.lid_a, node.lid_b)) continue;
    auto win = lid_window(node.chain, a, b, on);
    if (!win) continue;
    if (win->second - win->first < 2) continue;
    if (!is_root && win->first == 0 && win->second + 1 == node.chain.size()) continue;
    PocketNode child;
    child.level = node.level + 1;
    child.lid_a = node.chain[win->first];
    child.lid_b = node.chain[win->second];
    child.chain.assign(node.chain.begin() + static_cast<long>(win->first),
                       node.chain.begin() + static_cast<long>(win->second) + 1);
    fill_node(ps, edges, child, false);
    node.children.push_back(std::move(child));
  }
}

inline void collect_levels(const PocketNode& node, PocketVector& v) {
  const std::size_t k = static_cast<std::size_t>(node.level - 1);
  if (v.size() <= k) v.resize(k + 1, 0);
  v[k] += node.count;
  for (const auto& c : node.children) collect_levels(c, v);
}

}  // namespace detail

/// Pocket hierarchy of a wrap.  The root chain starts at the first hull
/// point occurring in sigma and wraps around to it.
inline PocketNode pocket_tree(const Wrap& w, const PointSet& ps) {
  const Hull h = convex_hull(ps);
  std::vector<char> on(static_cast<std::size_t>(ps.size()), 0);
  for (Index i : h.boundary) on[static_cast<std::size_t>(i)] = 1;
  Position start = 0;
  while (start < w.size() && !on[static_cast<std::size_t>(w.at(start))]) ++start;
  PocketNode root;
  root.level = 1;
  for (Position k = 0; k <= w.size(); ++k) root.chain.push_back(w.at(start + k));
  detail::fill_node(ps, detail::wrap_edges(w), root, true);
  return root;
}

/// Level-1 pockets: one per hull edge of S that is not an edge of the wrap.
inline std::vector<PocketNode> pockets(const Wrap& w, const PointSet& ps) {
  return pocket_tree(w, ps).children;
}

inline int pocket_count(const PocketNode& pk) { return pk.count; }

inline PocketVector pocket_vector(const PocketNode& root) {
  PocketVector v;
  detail::collect_levels(root, v);
  return v;
}

inline PocketVector pocket_vector(const Wrap& w, const PointSet& ps) {
  return pocket_vector(pocket_tree(w, ps));
}

/// Strict lexicographic order; missing entries count as 0.
inline bool lex_less(const PocketVector& v, const PocketVector& w) {
  const std::size_t m = std::max(v.size(), w.size());
  for (std::size_t k = 0; k < m; ++k) {
    int a = k < v.size() ? v[k] : 0, b = k < w.size() ? w[k] : 0;
    if (a != b) return a < b;
  }
  return false;
}

inline const ConvexRegion& hull_of_pocket(const PocketNode& pk) { return pk.region; }

/// Level-1 pocket under lid {a, b} (either orientation), if any.
inline const PocketNode* find_pocket(const std::vector<PocketNode>& level1, Index a, Index b) {
  for (const auto& p : level1)
    if ((p.lid_a == a && p.lid_b == b) || (p.lid_a == b && p.lid_b == a)) return &p;
  return nullptr;
}

/// hull(inner) is contained in hull(outer).
inline bool hull_nested(const PointSet& ps, const PocketNode& inner, const PocketNode& outer) {
  for (Index i : inner.hull)
    if (!outer.region.contains(ps[i])) return false;
  return true;
}

}  // namespace polywrap
