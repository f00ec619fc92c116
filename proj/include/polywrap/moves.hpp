#pragma once
// Atomic moves on polygonal wraps (stretch, twang), twang cascades, forward
// moves, and the swap/hop validity tests for simple polygons.

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "polywrap/errors.hpp"
#include "polywrap/exact.hpp"
#include "polywrap/geometry.hpp"
#include "polywrap/visibility.hpp"
#include "polywrap/wrap.hpp"

namespace polywrap {

enum class EventKind { Stretch, Twang };

/// One atomic move.  Positions refer to sigma of the event's pre-state.
struct MoveEvent {
  EventKind kind = EventKind::Twang;
  bool hairpin = false;

  // Stretch: edge (ea, eb) starting at edge_pos, stretch vertex v, edge
  // parameter t of the target point x, and the two inserted hull chains
  // (full chains a..v and v..b).  A hairpin stretch splits the vertex ea at
  // edge_pos into (ea, v, ea).
  Position edge_pos = 0;
  Index ea = -1, eb = -1, v = -1;
  Fraction t;
  std::vector<Index> chain_left, chain_right;

  // Twang: occurrence (a, b, c) with b at pos, replacement chain a..c.
  Position pos = 0;
  Index a = -1, b = -1, c = -1;
  std::vector<Index> chain;

  /// Twang chosen by a cascade loop (as opposed to the initial twang of a
  /// forward move or a twang inside a reversal).
  bool in_cascade = false;

  std::uint64_t pre_digest = 0;
  std::uint64_t post_digest = 0;
};

/// Reason an occurrence is or is not twangable.
enum class TwangStatus { Ok, NotDoubleContact, Collinear, Nested, Ambiguous };

/// Classifies whether the occurrence of sigma[pos] may be twanged.  A
/// different occurrence of b is nested in the triangle when its pass lies in
/// the closed convex sector at b; a pass whose both directions coincide with
/// the sector rays cannot be placed from the sequence alone and is reported
/// as Ambiguous.
inline TwangStatus twang_status(const Wrap& w, const PointSet& ps, Position pos,
                                std::optional<Position> ignore_other = std::nullopt) {
  const Index b = w.at(pos), a = w.prev(pos), c = w.next(pos);
  if (w.count(b) < 2) return TwangStatus::NotDoubleContact;
  if (a == c) return TwangStatus::Ok;
  if (orient_sign(ps[a], ps[b], ps[c]) == 0) return TwangStatus::Collinear;
  bool ambiguous = false;
  const HPoint hb(ps[b]), ha(ps[a]), hc(ps[c]);
  for (Position q = 0; q < w.size(); ++q) {
    if (q == pos || w.at(q) != b) continue;
    if (ignore_other && *ignore_other == q) continue;
    SectorSide s1 = sector_side(hb, ha, hc, ps[w.prev(q)]);
    SectorSide s2 = sector_side(hb, ha, hc, ps[w.next(q)]);
    if (s1 == SectorSide::Inside || s2 == SectorSide::Inside) return TwangStatus::Nested;
    if (s1 == SectorSide::OnRay && s2 == SectorSide::OnRay) ambiguous = true;
  }
  return ambiguous ? TwangStatus::Ambiguous : TwangStatus::Ok;
}

/// The elastic chain sp(abc) for the occurrence at pos: the hull chain of
/// the points of S in the closed triangle abc (excluding b) on b's side of
/// ac.  Hairpins (a == c) give the single-element chain (a).
inline std::vector<Index> sp_chain(const PointSet& ps, Index a, Index b, Index c) {
  if (a == c) return {a};
  if (orient_sign(ps[a], ps[b], ps[c]) == 0)
    throw Error(ErrorKind::TwangPreconditionViolated, "collinear twang triple");
  auto captured = points_in_triangle(ps, ps[a], ps[b], ps[c], b);
  return hull_chain_toward(ps, a, c, ps[b], std::move(captured));
}

namespace detail {

/// Checks the edges of `chain` (consecutive pairs, already in the wrap
/// starting at start_pos) against every other wrap edge.
inline void assert_chain_clear(const Wrap& w, const PointSet& ps, Position start_pos, int len) {
  const int m = w.size();
  for (int k = 0; k + 1 < len; ++k) {
    Position ei = w.wrap_pos(start_pos + k);
    const Point &p = ps[w.at(ei)], &q = ps[w.at(ei + 1)];
    for (Index r = 0; r < ps.size(); ++r)
      if (in_segment_interior(p, q, ps[r]))
        throw Error(ErrorKind::NonSimpleResult, "chain edge passes through point " + std::to_string(r));
    for (Position j = 0; j < m; ++j) {
      if (j == ei) continue;
      if (properly_cross(p, q, ps[w.at(j)], ps[w.at(j + 1)]))
        throw Error(ErrorKind::NonSimpleResult, "chain edge crosses wrap edge");
    }
  }
}

}  // namespace detail

/// Applies Twang at `pos` to w in place.  Status must already be acceptable
/// to the caller; only hard preconditions are rechecked here.
inline MoveEvent apply_twang(Wrap& w, const PointSet& ps, Position pos) {
  MoveEvent ev;
  ev.kind = EventKind::Twang;
  ev.pos = pos;
  ev.b = w.at(pos);
  ev.a = w.prev(pos);
  ev.c = w.next(pos);
  ev.pre_digest = digest(w.sigma());
  if (w.count(ev.b) < 2)
    throw Error(ErrorKind::TwangPreconditionViolated, "twang vertex is not a double contact");
  if (ev.a == ev.c) {
    ev.hairpin = true;
    ev.chain = {ev.a};
    if (pos + 1 < w.size()) {
      w.erase_at(pos, 2);
    } else {
      w.erase_at(pos - 1, 2);
    }
  } else {
    ev.chain = sp_chain(ps, ev.a, ev.b, ev.c);
    std::vector<Index> interior(ev.chain.begin() + 1, ev.chain.end() - 1);
    w.replace_at(pos, interior);
    detail::assert_chain_clear(w, ps, w.wrap_pos(pos - 1), static_cast<int>(ev.chain.size()));
  }
  ev.post_digest = digest(w.sigma());
  return ev;
}

/// Stretch in the limit form: the edge at edge_pos is replaced by the hull
/// chain of triangle (a, x, v), then v, then the hull chain of (v, x, b),
/// where x is the point of parameter t on the edge.
inline MoveEvent apply_stretch(Wrap& w, const PointSet& ps, Position edge_pos, Index v,
                               Fraction t) {
  MoveEvent ev;
  ev.kind = EventKind::Stretch;
  ev.edge_pos = edge_pos;
  ev.ea = w.at(edge_pos);
  ev.eb = w.at(edge_pos + 1);
  ev.v = v;
  ev.t = t;
  ev.pre_digest = digest(w.sigma());
  if (v == ev.ea || v == ev.eb)
    throw Error(ErrorKind::VisibilityViolated, "stretch vertex is an endpoint of the edge");
  if (!(Fraction(0, 1) < t && t < Fraction(1, 1)))
    throw Error(ErrorKind::VisibilityViolated, "stretch target outside the open edge");
  const HPoint x = point_on_edge(ps[ev.ea], ps[ev.eb], t);
  if (orient_sign(HPoint(ps[ev.ea]), HPoint(ps[ev.eb]), HPoint(ps[v])) == 0 ||
      !clearly_sees(w, ps, v, x, edge_pos))
    throw Error(ErrorKind::VisibilityViolated, "vertex does not clearly see the target point");

  ev.chain_left = hull_chain_toward(ps, ev.ea, v, x, points_in_triangle(ps, ps[ev.ea], x, ps[v]));
  ev.chain_right = hull_chain_toward(ps, v, ev.eb, x, points_in_triangle(ps, ps[v], x, ps[ev.eb]));
  std::vector<Index> ins(ev.chain_left.begin() + 1, ev.chain_left.end());
  ins.insert(ins.end(), ev.chain_right.begin() + 1, ev.chain_right.end() - 1);
  const Position at = edge_pos + 1;  // may equal size(): append after the last element
  w.insert_at(at, ins);
  detail::assert_chain_clear(w, ps, edge_pos, static_cast<int>(ins.size()) + 2);
  ev.post_digest = digest(w.sigma());
  return ev;
}

/// Stretch into a zero-length edge: the occurrence of `a` at pos becomes
/// (a, v, a).  This is the reverse of a hairpin twang.
inline MoveEvent apply_hairpin_stretch(Wrap& w, Position pos, Index v) {
  MoveEvent ev;
  ev.kind = EventKind::Stretch;
  ev.hairpin = true;
  ev.edge_pos = pos;
  ev.ea = ev.eb = w.at(pos);
  ev.v = v;
  ev.t = Fraction(0, 1);
  ev.chain_left = {ev.ea, v};
  ev.chain_right = {v, ev.ea};
  ev.pre_digest = digest(w.sigma());
  const Index items[2] = {v, ev.ea};
  w.insert_at(pos + 1, items);
  ev.post_digest = digest(w.sigma());
  return ev;
}

/// Cascade choice rule.
struct CascadePolicy {
  enum class Kind { Fifo, Random };
  Kind kind = Kind::Fifo;
  std::uint64_t seed = 0;
  /// Hard cap on twangs per cascade; 0 means n^4.
  long long cap = 0;
};

/// Called after every atomic move with the pre-state, post-state and event.
using AtomicHook = std::function<void(const Wrap&, const Wrap&, const MoveEvent&)>;

struct EngineCounters {
  long long stretches = 0;
  long long twangs = 0;
  long long ambiguous_twangs = 0;
};

/// Owns one wrap and applies atomic moves to it, reporting each to the hook.
class MoveEngine {
 public:
  MoveEngine(const PointSet& ps, Wrap w, AtomicHook hook = {})
      : ps_(&ps), wrap_(std::move(w)), hook_(std::move(hook)) {}

  const PointSet& points() const { return *ps_; }
  const Wrap& wrap() const { return wrap_; }
  Wrap& mutable_wrap() { return wrap_; }
  void set_wrap(Wrap w) { wrap_ = std::move(w); }
  void set_hook(AtomicHook hook) { hook_ = std::move(hook); }
  const EngineCounters& counters() const { return counters_; }

  MoveEvent stretch(Position edge_pos, Index v, Fraction t) {
    Wrap before = wrap_;
    MoveEvent ev = apply_stretch(wrap_, *ps_, edge_pos, v, t);
    ++counters_.stretches;
    if (hook_) hook_(before, wrap_, ev);
    return ev;
  }

  MoveEvent hairpin_stretch(Position pos, Index v) {
    Wrap before = wrap_;
    MoveEvent ev = apply_hairpin_stretch(wrap_, pos, v);
    ++counters_.stretches;
    if (hook_) hook_(before, wrap_, ev);
    return ev;
  }

  MoveEvent twang(Position pos) {
    Wrap before = wrap_;
    MoveEvent ev = apply_twang(wrap_, *ps_, pos);
    ev.in_cascade = in_cascade_;
    ++counters_.twangs;
    if (hook_) hook_(before, wrap_, ev);
    return ev;
  }

  /// Twangs until no double contact remains.  Returns the twang events.
  std::vector<MoveEvent> cascade(const CascadePolicy& policy) {
    std::vector<MoveEvent> events;
    const long long n = ps_->size();
    const long long cap = policy.cap > 0 ? policy.cap : n * n * n * n;
    std::mt19937_64 rng(policy.seed);
    std::deque<Index> queue;
    std::vector<char> queued(static_cast<std::size_t>(n), 0);
    auto enqueue_doubles = [&] {
      for (Index i : wrap_.double_contacts())
        if (!queued[static_cast<std::size_t>(i)]) {
          queue.push_back(i);
          queued[static_cast<std::size_t>(i)] = 1;
        }
    };
    enqueue_doubles();

    while (!queue.empty()) {
      if (static_cast<long long>(events.size()) >= cap)
        throw Error(ErrorKind::CascadeCapExceeded, "cascade exceeded " + std::to_string(cap) + " twangs");
      std::optional<Position> chosen;
      bool ambiguous = false;
      if (policy.kind == CascadePolicy::Kind::Random) {
        chosen = pick_random(queue, rng, ambiguous);
      } else {
        chosen = pick_fifo(queue, ambiguous);
      }
      if (!chosen)
        throw Error(ErrorKind::StuckCascade, "no twangable occurrence among double contacts");
      if (ambiguous) ++counters_.ambiguous_twangs;
      in_cascade_ = true;
      try {
        events.push_back(twang(*chosen));
      } catch (...) {
        in_cascade_ = false;
        throw;
      }
      in_cascade_ = false;
      for (Index i : queue) queued[static_cast<std::size_t>(i)] = 0;
      // Keep queue order, drop resolved contacts, append new ones.
      std::deque<Index> kept;
      for (Index i : queue)
        if (wrap_.count(i) >= 2) kept.push_back(i);
      queue = std::move(kept);
      for (Index i : queue) queued[static_cast<std::size_t>(i)] = 1;
      enqueue_doubles();
    }
    return events;
  }

 private:
  // FIFO: the head contact with its lexicographically smallest (pos a, pos c)
  // twangable occurrence; contacts without one rotate to the back.
  std::optional<Position> pick_fifo(std::deque<Index>& queue, bool& ambiguous) {
    for (std::size_t tries = 0; tries < queue.size(); ++tries) {
      Index b = queue.front();
      if (auto p = best_occurrence(b, false)) return p;
      queue.pop_front();
      queue.push_back(b);
    }
    for (std::size_t tries = 0; tries < queue.size(); ++tries) {
      Index b = queue.front();
      if (auto p = best_occurrence(b, true)) {
        ambiguous = true;
        return p;
      }
      queue.pop_front();
      queue.push_back(b);
    }
    return std::nullopt;
  }

  std::optional<Position> pick_random(const std::deque<Index>& queue, std::mt19937_64& rng,
                                      bool& ambiguous) {
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<Position> options;
      for (Index b : queue)
        for (Position p : wrap_.positions_of(b)) {
          TwangStatus s = twang_status(wrap_, *ps_, p);
          if (s == TwangStatus::Ok || (pass == 1 && s == TwangStatus::Ambiguous)) options.push_back(p);
        }
      if (!options.empty()) {
        ambiguous = pass == 1;
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        return options[pick(rng)];
      }
    }
    return std::nullopt;
  }

  std::optional<Position> best_occurrence(Index b, bool allow_ambiguous) const {
    std::optional<Position> best;
    std::pair<Position, Position> best_key;
    for (Position p : wrap_.positions_of(b)) {
      TwangStatus s = twang_status(wrap_, *ps_, p);
      if (s != TwangStatus::Ok && !(allow_ambiguous && s == TwangStatus::Ambiguous)) continue;
      std::pair<Position, Position> key{wrap_.wrap_pos(p - 1), wrap_.wrap_pos(p + 1)};
      if (!best || key < best_key) {
        best = p;
        best_key = key;
      }
    }
    return best;
  }

  const PointSet* ps_;
  Wrap wrap_;
  AtomicHook hook_;
  EngineCounters counters_;
  bool in_cascade_ = false;
};

/// A journaled forward or reverse move.
struct MoveRecord {
  bool reverse = false;
  Index edge_a = -1, edge_b = -1, v = -1;
  std::uint64_t pre_digest = 0;
  std::uint64_t post_digest = 0;
  std::vector<MoveEvent> events;

  int twang_count() const {
    return static_cast<int>(std::count_if(events.begin(), events.end(),
                                          [](const MoveEvent& e) { return e.kind == EventKind::Twang; }));
  }
  /// Every twang of the move, the initial twang of v included.
  int cascade_length() const { return twang_count(); }
};

using Journal = std::vector<MoveRecord>;

inline bool is_true_corner(const PointSet& ps, Index u, Index v, Index w) {
  return orient_sign(ps[u], ps[v], ps[w]) != 0;
}

/// Visible sub-intervals of the edge at edge_pos that lie strictly on the
/// reflex side of the vertex at v_pos (a true corner of a polygonization).
inline std::vector<VisibleInterval> reflex_visible_intervals(const Wrap& w, const PointSet& ps,
                                                             Position v_pos, Position edge_pos) {
  const Index v = w.at(v_pos), u = w.prev(v_pos), x = w.next(v_pos);
  std::vector<VisibleInterval> out;
  for (const VisibleInterval& iv : visible_intervals(w, ps, v, edge_pos)) {
    HPoint pt = point_on_edge(ps[w.at(edge_pos)], ps[w.at(edge_pos + 1)], iv.sample);
    if (sector_side(ps[v], ps[u], ps[x], pt) == SectorSide::Outside) out.push_back(iv);
  }
  return out;
}

/// Picks the stretch parameter for a forward move: the simplest parameter in
/// the longest reflex-side visible interval.
inline std::optional<Fraction> forward_target(const Wrap& w, const PointSet& ps, Position v_pos,
                                              Position edge_pos) {
  auto ivs = reflex_visible_intervals(w, ps, v_pos, edge_pos);
  if (ivs.empty()) return std::nullopt;
  const VisibleInterval* best = &ivs.front();
  for (const auto& iv : ivs)
    if ((iv.hi.approx() - iv.lo.approx()) > (best->hi.approx() - best->lo.approx())) best = &iv;
  return best->sample;
}

/// True iff (edge_pos, v) is a valid forward-move pair on polygonization w.
inline bool forward_move_valid(const Wrap& w, const PointSet& ps, Position edge_pos, Index v) {
  if (!w.is_polygonization()) return false;
  auto vp = w.positions_of(v);
  if (vp.size() != 1) return false;
  Position v_pos = vp.front();
  if (w.at(edge_pos) == v || w.at(edge_pos + 1) == v) return false;
  if (!is_true_corner(ps, w.prev(v_pos), v, w.next(v_pos))) return false;
  return forward_target(w, ps, v_pos, edge_pos).has_value();
}

/// ForwardMove(P, e, v): stretch v into e on v's reflex side, twang v's
/// original occurrence, then cascade.  The engine's wrap must be a simple
/// polygonization.
inline MoveRecord forward_move(MoveEngine& eng, Position edge_pos, Index v,
                               const CascadePolicy& policy = {}) {
  const Wrap& w = eng.wrap();
  const PointSet& ps = eng.points();
  if (!w.is_polygonization())
    throw Error(ErrorKind::PreconditionViolated, "forward move requires a polygonization");
  if (w.at(edge_pos) == v || w.at(edge_pos + 1) == v)
    throw Error(ErrorKind::VisibilityViolated, "stretch vertex is an endpoint of the edge");
  Position v_pos = w.positions_of(v).front();
  const Index u = w.prev(v_pos), x = w.next(v_pos);
  if (!is_true_corner(ps, u, v, x))
    throw Error(ErrorKind::PreconditionViolated, "stretch vertex is not a true corner");
  if (visible_intervals(w, ps, v, edge_pos).empty())
    throw Error(ErrorKind::VisibilityViolated, "vertex sees no point of the edge");
  auto t = forward_target(w, ps, v_pos, edge_pos);
  if (!t) throw Error(ErrorKind::ReflexSideViolated, "no visible point on the reflex side");

  MoveRecord rec;
  rec.edge_a = w.at(edge_pos);
  rec.edge_b = w.at(edge_pos + 1);
  rec.v = v;
  rec.pre_digest = digest(w.sigma());

  MoveEvent s = eng.stretch(edge_pos, v, *t);
  // Original occurrence shifts if the insertion happened at or before it.
  int ins = static_cast<int>(s.chain_left.size() + s.chain_right.size()) - 3;
  Position orig = v_pos;
  if (edge_pos + 1 <= v_pos) orig += ins;
  rec.events.push_back(s);
  rec.events.push_back(eng.twang(orig));
  auto casc = eng.cascade(policy);
  rec.events.insert(rec.events.end(), casc.begin(), casc.end());
  rec.post_digest = digest(eng.wrap().sigma());
  return rec;
}

/// Transposing positions i and i+1 of a simple polygon keeps it simple.
inline bool swap_valid(const Wrap& p, const PointSet& ps, Position i) {
  if (!p.is_polygonization())
    throw Error(ErrorKind::PreconditionViolated, "swap requires a polygonization");
  std::vector<Index> s = p.sigma();
  std::swap(s[static_cast<std::size_t>(p.wrap_pos(i))], s[static_cast<std::size_t>(p.wrap_pos(i + 1))]);
  return is_simple(s, ps);
}

/// Hop(e, v): v leaves its neighbours and is inserted into edge e.  Valid iff
/// the triangle of v's incident edges is empty of other vertices and the
/// triangle of e and v lies on v's reflex side and is empty of other vertices.
inline bool hop_valid(const Wrap& p, const PointSet& ps, Position edge_pos, Index v) {
  if (!p.is_polygonization())
    throw Error(ErrorKind::PreconditionViolated, "hop requires a polygonization");
  const Index ea = p.at(edge_pos), eb = p.at(edge_pos + 1);
  if (v == ea || v == eb) return false;
  const Position vp = p.positions_of(v).front();
  const Index u = p.prev(vp), w = p.next(vp);
  if (orient_sign(ps[u], ps[v], ps[w]) == 0) return false;
  if (orient_sign(ps[ea], ps[eb], ps[v]) == 0) return false;
  for (Index k = 0; k < ps.size(); ++k) {
    if (k != u && k != v && k != w && in_closed_triangle(ps[k], ps[u], ps[v], ps[w])) return false;
    if (k != ea && k != eb && k != v && in_closed_triangle(ps[k], ps[ea], ps[v], ps[eb])) return false;
  }
  // Triangle (e, v) on the reflex side: directions to both edge endpoints and
  // the region between them avoid v's convex sector.
  const HPoint hv(ps[v]), hu(ps[u]), hw(ps[w]);
  if (sector_side(hv, hu, hw, ps[ea]) != SectorSide::Outside) return false;
  if (sector_side(hv, hu, hw, ps[eb]) != SectorSide::Outside) return false;
  // The sector (ea, v, eb) must not contain u or w either.
  if (sector_side(hv, ps[ea], ps[eb], hu) != SectorSide::Outside) return false;
  if (sector_side(hv, ps[ea], ps[eb], hw) != SectorSide::Outside) return false;
  // The hop result must be simple (guards the degenerate adjacent-edge case).
  std::vector<Index> s;
  for (Position k = 0; k < p.size(); ++k) {
    Index i = p.at(k);
    if (i == v) continue;
    s.push_back(i);
    if (i == ea && p.at(k + 1) == eb) s.push_back(v);
    if (i == ea && p.at(k + 1) == v && p.at(k + 2) == eb) s.push_back(v);
  }
  return is_simple(s, ps);
}

}  // namespace polywrap
