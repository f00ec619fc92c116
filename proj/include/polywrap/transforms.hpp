#pragma once
// Pocket reduction, canonical polygonization and the end-to-end polygon
// transformation built from forward moves and their journaled reversals.

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "polywrap/moves.hpp"
#include "polywrap/pockets.hpp"
#include "polywrap/reverse.hpp"

namespace polywrap {

/// Forward moves per phase plus atomic totals.
struct MoveBudget {
  long long reduction_moves = 0;
  long long canonical_moves = 0;
  long long reverse_moves = 0;
  long long stretches = 0;
  long long twangs = 0;

  long long forward_moves() const { return reduction_moves + canonical_moves; }
  long long moves() const { return forward_moves() + reverse_moves; }
  long long atomic_moves() const { return stretches + twangs; }

  void add_atomic(const MoveRecord& r) {
    for (const MoveEvent& e : r.events) ++(e.kind == EventKind::Stretch ? stretches : twangs);
  }
};

struct ReductionOptions {
  CascadePolicy policy;
  /// Called after every forward move with the record and the new wrap.
  std::function<void(const MoveRecord&, const Wrap&)> on_move;
};

/// One Single Pocket Reduction run.  counts[i] is the number of points of S in
/// hull(A) before iteration i; the final entry is taken after the last move.
struct SingleReport {
  Index lid_a = -1, lid_b = -1;
  int iterations = 0;
  std::vector<int> counts;
  bool strictly_decreasing() const {
    for (std::size_t i = 1; i < counts.size(); ++i)
      if (counts[i] >= counts[i - 1]) return false;
    return true;
  }
};

struct CanonicalReport {
  Index lid_a = -1, lid_b = -1;
  std::vector<Index> order;  // v1..vk
  int moves = 0;
  bool prefix_consecutive = true;     // after every iteration
  long long low_rank_twangs = 0;      // cascade twangs of rank <= i in iteration i
};

namespace detail {

inline i128 twice_area(const std::vector<Index>& s, const PointSet& ps) {
  i128 a = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Point &p = ps[s[i]], &q = ps[s[(i + 1) % s.size()]];
    a += i128(p.x) * q.y - i128(q.x) * p.y;
  }
  return a;
}

/// Start position of the polygon edge {p, q}, oriented as it occurs.
inline std::optional<Position> edge_position(const Wrap& w, Index p, Index q) {
  for (Position k = 0; k < w.size(); ++k) {
    Index x = w.at(k), y = w.at(k + 1);
    if ((x == p && y == q) || (x == q && y == p)) return k;
  }
  return std::nullopt;
}

inline MoveRecord run_forward(MoveEngine& eng, Position edge_pos, Index v, Journal& journal,
                              const ReductionOptions& opt) {
  MoveRecord rec = forward_move(eng, edge_pos, v, opt.policy);
  if (!eng.wrap().is_polygonization())
    throw Error(ErrorKind::InvariantViolated, "forward move did not end in a polygonization");
  journal.push_back(rec);
  if (opt.on_move) opt.on_move(rec, eng.wrap());
  return rec;
}

inline int pocket_count_for(const Wrap& w, const PointSet& ps, Index a, Index b) {
  auto level1 = pockets(w, ps);
  const PocketNode* A = find_pocket(level1, a, b);
  return A ? A->count : 2;
}

}  // namespace detail

/// Lowest hull edge of S by sorted index pair, returned as (smaller, larger).
inline std::pair<Index, Index> lowest_hull_edge(const PointSet& ps) {
  const auto& hb = convex_hull(ps).boundary;
  std::pair<Index, Index> best{-1, -1};
  for (std::size_t k = 0; k < hb.size(); ++k) {
    auto e = detail::ukey(hb[k], hb[(k + 1) % hb.size()]);
    if (best.first < 0 || e < best) best = e;
  }
  return best;
}

/// Canonical order of pocket points for lid (a, b): by angle about a,
/// farthest from the ray a->b first, ties on a ray from nearest to farthest.
inline std::vector<Index> canonical_order(const PointSet& ps, Index a, Index b, std::vector<Index> pts) {
  if (pts.empty()) return pts;
  const int side = orient_sign(ps[a], ps[b], ps[pts.front()]);
  std::sort(pts.begin(), pts.end(), [&](Index p, Index q) {
    int o = orient_sign(ps[a], ps[q], ps[p]);
    if (o != 0) return o == side;
    return dot(ps[a], ps[p], ps[p]) < dot(ps[a], ps[q], ps[q]);
  });
  return pts;
}

/// The pocket chain a, ..., b of a one-pocket polygonization with lid (a, b),
/// walking from a away from its hull neighbour.
inline std::vector<Index> pocket_chain(const Wrap& w, const PointSet& ps, Index a, Index b) {
  const auto& hb = convex_hull(ps).boundary;
  const std::size_t h = hb.size();
  const auto ia = static_cast<std::size_t>(std::find(hb.begin(), hb.end(), a) - hb.begin());
  Index nb1 = hb[(ia + 1) % h], nb2 = hb[(ia + h - 1) % h];
  Index hull_nb = nb1 == b ? nb2 : nb1;
  Position pa = w.positions_of(a).front();
  const int dir = w.next(pa) == hull_nb ? -1 : 1;
  std::vector<Index> chain{a};
  for (Position k = 1; k < w.size(); ++k) {
    Index x = w.at(pa + dir * k);
    chain.push_back(x);
    if (x == b) break;
  }
  return chain;
}

/// Empties pocket A with lid {a, b} into other pockets by forward moves.
/// `target`, when set, is a polygon edge treated as a degenerate pocket that
/// ranks after all real pockets.
inline SingleReport single_pocket_reduction(MoveEngine& eng, Index a, Index b, Journal& journal,
                                            const ReductionOptions& opt = {},
                                            std::optional<std::pair<Index, Index>> target = std::nullopt) {
  const PointSet& ps = eng.points();
  SingleReport rep;
  rep.lid_a = a;
  rep.lid_b = b;
  {
    auto level1 = pockets(eng.wrap(), ps);
    if (!find_pocket(level1, a, b)) return rep;  // bare lid
    if (level1.size() + (target ? 1 : 0) < 2)
      throw Error(ErrorKind::PreconditionViolated, "single pocket reduction needs another pocket");
  }
  const int bound = detail::pocket_count_for(eng.wrap(), ps, a, b);
  while (true) {
    const Wrap& w = eng.wrap();
    auto level1 = pockets(w, ps);
    const PocketNode* A = find_pocket(level1, a, b);
    if (!A || A->chain.size() < 3) break;
    rep.counts.push_back(A->count);
    if (rep.iterations > bound)
      throw Error(ErrorKind::InvariantViolated, "single pocket reduction does not terminate");

    // Target edges ordered by (pocket id, edge position along its chain).
    std::vector<std::pair<Index, Index>> targets;
    for (const PocketNode& B : level1) {
      if (&B == A) continue;
      for (std::size_t k = 0; k + 1 < B.chain.size(); ++k) targets.emplace_back(B.chain[k], B.chain[k + 1]);
    }
    if (target) targets.push_back(*target);

    const Hull hA = convex_hull(ps, A->hull);
    std::vector<Index> corners = hA.corners, others = hA.on_hull;
    std::sort(corners.begin(), corners.end());
    std::sort(others.begin(), others.end());
    std::optional<std::pair<Position, Index>> pick;
    for (const auto* group : {&corners, &others}) {
      for (Index v : *group) {
        if (v == a || v == b) continue;
        Position vp = w.positions_of(v).front();
        if (!is_true_corner(ps, w.prev(vp), v, w.next(vp))) continue;
        for (auto [p, q] : targets) {
          auto ep = detail::edge_position(w, p, q);
          if (ep && forward_move_valid(w, ps, *ep, v)) {
            pick = std::make_pair(*ep, v);
            break;
          }
        }
        if (pick) break;
      }
      if (pick) break;
    }
    if (!pick) throw Error(ErrorKind::SelectionFailure, "no pocket vertex sees another pocket");
    detail::run_forward(eng, pick->first, pick->second, journal, opt);
    ++rep.iterations;
  }
  rep.counts.push_back(detail::pocket_count_for(eng.wrap(), ps, a, b));
  return rep;
}

/// Moves every pocket other than the one with lid {a, b} into it.  If {a, b}
/// is a polygon edge it serves as a degenerate target pocket.
inline std::vector<SingleReport> pocket_reduction(MoveEngine& eng, Index a, Index b, Journal& journal,
                                                  const ReductionOptions& opt = {}) {
  const PointSet& ps = eng.points();
  std::vector<SingleReport> out;
  while (true) {
    auto level1 = pockets(eng.wrap(), ps);
    const PocketNode* next = nullptr;
    for (const PocketNode& p : level1)
      if (detail::ukey(p.lid_a, p.lid_b) != detail::ukey(a, b)) {
        next = &p;
        break;
      }
    if (!next) break;
    std::optional<std::pair<Index, Index>> target;
    if (!find_pocket(level1, a, b)) target = std::make_pair(a, b);
    out.push_back(single_pocket_reduction(eng, next->lid_a, next->lid_b, journal, opt, target));
  }
  return out;
}

/// Brings a one-pocket polygonization with lid (a, b) to canonical form.
inline CanonicalReport canonical_polygonization(MoveEngine& eng, Index a, Index b, Journal& journal,
                                                const ReductionOptions& opt = {}) {
  const PointSet& ps = eng.points();
  CanonicalReport rep;
  rep.lid_a = a;
  rep.lid_b = b;
  {
    auto level1 = pockets(eng.wrap(), ps);
    if (level1.size() != 1 || !find_pocket(level1, a, b))
      throw Error(ErrorKind::PreconditionViolated, "canonical polygonization needs exactly one pocket with the lid");
  }
  std::vector<Index> chain = pocket_chain(eng.wrap(), ps, a, b);
  rep.order = canonical_order(ps, a, b, std::vector<Index>(chain.begin() + 1, chain.end() - 1));
  std::vector<int> rank(static_cast<std::size_t>(ps.size()), 0);
  for (std::size_t i = 0; i < rep.order.size(); ++i) rank[static_cast<std::size_t>(rep.order[i])] = static_cast<int>(i) + 1;

  for (std::size_t i = 1; i <= rep.order.size(); ++i) {
    const Index prev = i == 1 ? a : rep.order[i - 2], vi = rep.order[i - 1];
    chain = pocket_chain(eng.wrap(), ps, a, b);
    auto it = std::find(chain.begin(), chain.end(), prev);
    if (it == chain.end() || it + 1 == chain.end())
      throw Error(ErrorKind::InvariantViolated, "canonical prefix lost");
    const Index succ = *(it + 1);
    if (succ != vi) {
      auto ep = detail::edge_position(eng.wrap(), prev, succ);
      MoveRecord rec = detail::run_forward(eng, *ep, vi, journal, opt);
      ++rep.moves;
      for (const MoveEvent& e : rec.events)
        if (e.kind == EventKind::Twang && e.in_cascade && rank[static_cast<std::size_t>(e.b)] > 0 &&
            rank[static_cast<std::size_t>(e.b)] <= static_cast<int>(i))
          ++rep.low_rank_twangs;
    }
    chain = pocket_chain(eng.wrap(), ps, a, b);
    for (std::size_t k = 0; k <= i && rep.prefix_consecutive; ++k)
      rep.prefix_consecutive = k < chain.size() && chain[k] == (k == 0 ? a : rep.order[k - 1]);
  }
  return rep;
}

/// Orders a polygonization counter-clockwise.
inline std::vector<Index> ccw(std::vector<Index> s, const PointSet& ps) {
  if (detail::twice_area(s, ps) < 0) std::reverse(s.begin(), s.end());
  return s;
}

struct TransformOptions {
  CascadePolicy policy;
  AtomicHook hook;  // every atomic move, forward and reverse
  std::function<void(const MoveRecord&, const Wrap&)> on_move;
};

struct TransformResult {
  std::pair<Index, Index> lid;
  std::vector<Index> canonical;   // P_c(e), counter-clockwise
  std::vector<Index> result;      // final polygonization
  Journal forward;                // moves applied to P1
  Journal target_journal;         // moves that take P2 to P_c(e)
  Journal reversed;               // reverse moves applied to P_c(e)
  std::vector<SingleReport> reductions;
  std::vector<CanonicalReport> canonicals;
  MoveBudget budget;
  bool ok = false;

  /// Every atomic move in execution order.
  std::vector<MoveEvent> atomic_events() const {
    std::vector<MoveEvent> out;
    for (const auto* j : {&forward, &reversed})
      for (const MoveRecord& r : *j) out.insert(out.end(), r.events.begin(), r.events.end());
    return out;
  }
};

/// Reduces p to P_c(lid) with forward moves only.
inline CanonicalReport to_canonical(MoveEngine& eng, std::pair<Index, Index> lid, Journal& journal,
                                    std::vector<SingleReport>& reductions, const ReductionOptions& opt) {
  auto r = pocket_reduction(eng, lid.first, lid.second, journal, opt);
  reductions.insert(reductions.end(), r.begin(), r.end());
  return canonical_polygonization(eng, lid.first, lid.second, journal, opt);
}

/// Transforms polygonization p1 into p2: both are reduced to the canonical
/// polygonization of the lowest hull edge, and p2's journal is replayed
/// backwards with reverse moves.
inline TransformResult transform(const PointSet& ps, const std::vector<Index>& p1, const std::vector<Index>& p2,
                                 const TransformOptions& topt = {}) {
  if (!is_simple(p1, ps) || !is_simple(p2, ps))
    throw Error(ErrorKind::PreconditionViolated, "transform inputs must be simple polygonizations");
  const int n = ps.size();
  TransformResult res;
  res.lid = lowest_hull_edge(ps);
  ReductionOptions opt{topt.policy, topt.on_move};
  const std::vector<Index> target = ccw(p2, ps);

  MoveEngine e1(ps, Wrap(n, ccw(p1, ps)), topt.hook);
  MoveEngine e2(ps, Wrap(n, target), topt.hook);

  if (convex_hull(ps).boundary.size() != static_cast<std::size_t>(n)) {
    res.canonicals.push_back(to_canonical(e1, res.lid, res.forward, res.reductions, opt));
    for (const auto& s : res.reductions) res.budget.reduction_moves += s.iterations;
    res.budget.canonical_moves = res.canonicals.back().moves;
    res.canonicals.push_back(to_canonical(e2, res.lid, res.target_journal, res.reductions, opt));
  }
  for (const MoveRecord& r : res.forward) res.budget.add_atomic(r);

  res.canonical = e1.wrap().sigma();
  if (!same_cycle(e1.wrap().sigma(), e2.wrap().sigma()))
    throw Error(ErrorKind::ReversalMismatch, "the two reductions reached different canonical polygonizations");
  e1.mutable_wrap().rotate_to_match(e2.wrap().sigma());
  for (auto it = res.target_journal.rbegin(); it != res.target_journal.rend(); ++it) {
    res.reversed.push_back(reverse_move(e1, *it));
    res.budget.add_atomic(res.reversed.back());
    ++res.budget.reverse_moves;
    if (opt.on_move) opt.on_move(res.reversed.back(), e1.wrap());
  }
  res.result = e1.wrap().sigma();
  res.ok = e1.wrap().sigma() == target && cyclic_equal(res.result, p2);
  return res;
}

}  // namespace polywrap
