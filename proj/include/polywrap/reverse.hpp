#pragma once
// Reversal of atomic moves by the stretch/twang constructions, checked
// against the journaled states.

#include <vector>

#include "polywrap/moves.hpp"

namespace polywrap {

namespace detail {

inline void require_state(const Wrap& w, std::uint64_t want, const char* what) {
  if (digest(w.sigma()) != want)
    throw Error(ErrorKind::ReversalMismatch, std::string(what) + ": state digest differs from journal");
}

// Brings the engine's wrap to exactly `expected` if it is a rotation of it.
inline void settle(MoveEngine& eng, const std::vector<Index>& expected, std::uint64_t want) {
  if (!same_cycle(eng.wrap().sigma(), expected))
    throw Error(ErrorKind::ReversalMismatch, "restored wrap is not the recorded pre-state");
  eng.mutable_wrap().rotate_to_match(expected);
  require_state(eng.wrap(), want, "after reversal");
}

inline bool empty_triangle(const PointSet& ps, Index a, Index b, Index c) {
  for (Index k = 0; k < ps.size(); ++k)
    if (k != a && k != b && k != c && in_closed_triangle(ps[k], ps[a], ps[b], ps[c])) return false;
  return true;
}

}  // namespace detail

/// Pre-state of a twang event given its exact post-state.
inline std::vector<Index> twang_pre_state(const std::vector<Index>& post, const MoveEvent& ev) {
  std::vector<Index> pre = post;
  if (ev.hairpin) {
    // The twang erased (b, a) at pos unless b was last, where it erased
    // (a, b) at pos - 1.
    const Index pair[2] = {ev.b, ev.a};
    const Position L = static_cast<Position>(post.size()) + 2;
    if (ev.pos + 1 < L) {
      pre.insert(pre.begin() + ev.pos, pair, pair + 2);
    } else {
      const Index tail[2] = {ev.a, ev.b};
      pre.insert(pre.end(), tail, tail + 2);
    }
    return pre;
  }
  const long k = static_cast<long>(ev.chain.size()) - 2;
  pre.erase(pre.begin() + ev.pos, pre.begin() + ev.pos + k);
  pre.insert(pre.begin() + ev.pos, ev.b);
  return pre;
}

/// Pre-state of a stretch event given its exact post-state.
inline std::vector<Index> stretch_pre_state(const std::vector<Index>& post, const MoveEvent& ev) {
  std::vector<Index> pre = post;
  const long ins = static_cast<long>(ev.chain_left.size() + ev.chain_right.size()) - 3;
  pre.erase(pre.begin() + ev.edge_pos + 1, pre.begin() + ev.edge_pos + 1 + ins);
  return pre;
}

/// Undoes a twang: Stretch(e, b) into the first edge of the replacement
/// chain, then twangs the residual chain vertices next to b in order.  The
/// engine's wrap must equal the event's post-state.
inline std::vector<MoveEvent> reverse_twang(MoveEngine& eng, const MoveEvent& ev) {
  if (ev.kind != EventKind::Twang) throw Error(ErrorKind::PreconditionViolated, "not a twang event");
  detail::require_state(eng.wrap(), ev.post_digest, "reverse twang");
  const std::vector<Index> expected = twang_pre_state(eng.wrap().sigma(), ev);
  if (digest(expected) != ev.pre_digest)
    throw Error(ErrorKind::ReversalMismatch, "reconstructed twang pre-state differs from journal");

  std::vector<MoveEvent> out;
  const PointSet& ps = eng.points();
  if (ev.hairpin) {
    // ac is an edge of length zero: insert (b, a) after the surviving a.
    const Position L = eng.wrap().size() + 2;
    Position apos = ev.pos + 1 < L ? eng.wrap().wrap_pos(ev.pos - 1) : 0;
    out.push_back(eng.hairpin_stretch(apos, ev.b));
    detail::settle(eng, expected, ev.pre_digest);
    return out;
  }

  const Position edge_pos = eng.wrap().wrap_pos(ev.pos - 1);
  if (eng.wrap().at(edge_pos) != ev.a) throw Error(ErrorKind::ReversalMismatch, "chain start misplaced");
  auto ivs = visible_intervals(eng.wrap(), ps, ev.b, edge_pos);
  if (ivs.empty()) throw Error(ErrorKind::ReversalMismatch, "twang vertex cannot see its chain");
  const VisibleInterval* best = &ivs.front();
  for (const auto& iv : ivs)
    if ((iv.hi.approx() - iv.lo.approx()) > (best->hi.approx() - best->lo.approx())) best = &iv;
  MoveEvent s = eng.stretch(edge_pos, ev.b, best->sample);
  if (s.chain_left.size() != 2 || s.chain_right.size() != 2)
    throw Error(ErrorKind::ReversalMismatch, "reverse stretch captured points");
  out.push_back(s);

  Position bpos = edge_pos + 1;
  for (std::size_t k = 1; k + 1 < ev.chain.size(); ++k) {
    Position q = eng.wrap().wrap_pos(bpos + 1);
    if (eng.wrap().at(q) != ev.chain[k]) throw Error(ErrorKind::ReversalMismatch, "residual chain misplaced");
    MoveEvent t = eng.twang(q);
    if (t.chain.size() != 2) throw Error(ErrorKind::ReversalMismatch, "residual twang captured points");
    out.push_back(t);
    if (q < bpos) --bpos;
  }
  detail::settle(eng, expected, ev.pre_digest);
  return out;
}

/// Undoes a stretch: twang the stretch vertex, then the inserted chain
/// vertices one at a time.  The funnel between the chains and the original
/// edge holds no points, so none of these twangs captures anything.
inline std::vector<MoveEvent> reverse_stretch(MoveEngine& eng, const MoveEvent& ev) {
  if (ev.kind != EventKind::Stretch) throw Error(ErrorKind::PreconditionViolated, "not a stretch event");
  detail::require_state(eng.wrap(), ev.post_digest, "reverse stretch");
  const std::vector<Index> expected = stretch_pre_state(eng.wrap().sigma(), ev);
  if (digest(expected) != ev.pre_digest)
    throw Error(ErrorKind::ReversalMismatch, "reconstructed stretch pre-state differs from journal");

  std::vector<MoveEvent> out;
  const PointSet& ps = eng.points();
  if (ev.hairpin) {
    // (a, v, a) -> a is a hairpin twang of v.
    out.push_back(eng.twang(ev.edge_pos + 1));
    detail::settle(eng, expected, ev.pre_digest);
    return out;
  }

  const Position start = ev.edge_pos;  // position of the edge's first endpoint
  int inner = static_cast<int>(ev.chain_left.size() + ev.chain_right.size()) - 3;
  Position vpos = start + static_cast<Position>(ev.chain_left.size()) - 1;
  out.push_back(eng.twang(vpos));
  if (out.back().chain.size() != 2) throw Error(ErrorKind::ReversalMismatch, "stretch vertex twang captured points");
  --inner;
  while (inner > 0) {
    // The funnel is the polygon a, C1, C2, b closed by the original edge;
    // only its convex, point-free ears sweep funnel area.
    const Wrap& w = eng.wrap();
    i128 area = 0;
    for (int k = 0; k <= inner + 1; ++k) {
      const Point& p = ps[w.at(start + k)];
      const Point& q = ps[w.at(start + (k == inner + 1 ? 0 : k + 1))];
      area += i128(p.x) * q.y - i128(q.x) * p.y;
    }
    const int turn = sign(area);
    bool progressed = false;
    for (int k = 1; k <= inner; ++k) {
      Position p = start + k;
      Index a = w.prev(p), b = w.at(p), c = w.next(p);
      if (orient_sign(ps[a], ps[b], ps[c]) != turn || !detail::empty_triangle(ps, a, b, c)) continue;
      out.push_back(eng.twang(p));
      if (out.back().chain.size() != 2) throw Error(ErrorKind::ReversalMismatch, "funnel twang captured points");
      --inner;
      progressed = true;
      break;
    }
    if (!progressed) throw Error(ErrorKind::ReversalMismatch, "no funnel vertex can be twanged");
  }
  detail::settle(eng, expected, ev.pre_digest);
  return out;
}

/// Reverses a journaled move: reverse twangs in reverse order, then the
/// reverse stretch.  The engine's wrap must equal the move's post-state; on
/// return it equals the pre-state exactly.
inline MoveRecord reverse_move(MoveEngine& eng, const MoveRecord& rec) {
  detail::require_state(eng.wrap(), rec.post_digest, "reverse move");
  MoveRecord out;
  out.reverse = true;
  out.edge_a = rec.edge_a;
  out.edge_b = rec.edge_b;
  out.v = rec.v;
  out.pre_digest = rec.post_digest;
  for (auto it = rec.events.rbegin(); it != rec.events.rend(); ++it) {
    auto evs = it->kind == EventKind::Twang ? reverse_twang(eng, *it) : reverse_stretch(eng, *it);
    out.events.insert(out.events.end(), evs.begin(), evs.end());
  }
  detail::require_state(eng.wrap(), rec.pre_digest, "reverse move");
  out.post_digest = rec.pre_digest;
  return out;
}

}  // namespace polywrap
