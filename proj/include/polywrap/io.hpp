#pragma once
// JSON and JSONL formats, trace replay, SVG rendering and random walks.

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "polywrap/instances.hpp"
#include "polywrap/invariants.hpp"
#include "polywrap/pockets.hpp"
#include "polywrap/reverse.hpp"
#include "polywrap/transforms.hpp"

namespace polywrap {

using json = nlohmann::json;

/// Malformed or unreadable input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline json parse_json(const std::string& text, const std::string& what = "input") {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline json read_json(const std::string& path) { return parse_json(read_text(path), path); }

// ---- point sets and orders

inline json points_to_json(const PointSet& ps) {
  json arr = json::array();
  for (const Point& p : ps.points()) arr.push_back({p.x, p.y});
  return json{{"points", arr}};
}

inline PointSet points_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("points") ? j.at("points") : j;
  if (!arr.is_array()) throw ParseError("expected a \"points\" array");
  std::vector<Point> pts;
  for (const json& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw ParseError("each point must be [x, y] with integer coordinates");
    pts.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
  }
  try {
    return PointSet(std::move(pts));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

/// Reads {"order": [...]} or {"sigma": [...]} (or a bare array).
inline std::vector<Index> order_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (j.contains("order")) {
      arr = &j.at("order");
    } else if (j.contains("sigma")) {
      arr = &j.at("sigma");
    } else {
      throw ParseError("expected an \"order\" or \"sigma\" array");
    }
  }
  if (!arr->is_array()) throw ParseError("order must be an array");
  std::vector<Index> out;
  for (const json& v : *arr) {
    if (!v.is_number_integer()) throw ParseError("order entries must be integers");
    out.push_back(v.get<Index>());
  }
  return out;
}

/// Order checked against the point set: a permutation of 0..n-1.
inline std::vector<Index> polygon_from_json(const json& j, const PointSet& ps) {
  auto order = order_from_json(j);
  std::vector<char> seen(static_cast<std::size_t>(ps.size()), 0);
  if (static_cast<int>(order.size()) != ps.size()) throw ParseError("order length differs from the point count");
  for (Index i : order) {
    if (i < 0 || i >= ps.size() || seen[static_cast<std::size_t>(i)]) throw ParseError("order is not a permutation");
    seen[static_cast<std::size_t>(i)] = 1;
  }
  return order;
}

// ---- trace events

namespace detail {

inline std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("trace value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string hex(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

}  // namespace detail

inline json event_to_json(const MoveEvent& ev, const PointSet& ps) {
  json j;
  if (ev.kind == EventKind::Stretch) {
    const Point &a = ps[ev.ea], &b = ps[ev.eb];
    const i128 num = ev.t.num, den = ev.t.den;
    json x = json::array();
    for (auto [pa, pb] : {std::pair{a.x, b.x}, std::pair{a.y, b.y}}) {
      i128 xn = static_cast<i128>(pa) * (den - num) + static_cast<i128>(pb) * num, xd = den;
      const i128 g = detail::gcd128(xn, xd);
      if (g > 1) {
        xn /= g;
        xd /= g;
      }
      x.push_back(detail::narrow(xn));
      x.push_back(detail::narrow(xd));
    }
    j = {{"op", "stretch"},
         {"edge", {ev.ea, ev.eb}},
         {"v", ev.v},
         {"x", x},
         {"chains", {ev.chain_left, ev.chain_right}},
         {"pos", ev.edge_pos},
         {"t", {detail::narrow(num), detail::narrow(den)}}};
    if (ev.hairpin) j["hairpin"] = true;
  } else {
    j = {{"op", "twang"}, {"a", ev.a}, {"b", ev.b}, {"c", ev.c}, {"chain", ev.chain}, {"pos", ev.pos}};
    if (ev.in_cascade) j["cascade"] = true;
  }
  j["pre"] = detail::hex(ev.pre_digest);
  j["post"] = detail::hex(ev.post_digest);
  return j;
}

/// Collects a JSONL trace: a begin line (points and sigma), events, align
/// lines for pure rotations, and an end line.
class TraceWriter {
 public:
  explicit TraceWriter(const PointSet& ps) : ps_(&ps) {}

  void begin(const std::vector<Index>& sigma) {
    json pts = points_to_json(*ps_)["points"];
    lines_.push_back(json{{"op", "begin"}, {"points", pts}, {"sigma", sigma}}.dump());
  }
  void event(const MoveEvent& ev) { lines_.push_back(event_to_json(ev, *ps_).dump()); }
  void move(const MoveRecord& rec) {
    lines_.push_back(
        json{{"op", "move"}, {"edge", {rec.edge_a, rec.edge_b}}, {"v", rec.v}, {"reverse", rec.reverse}}.dump());
  }
  void align(const std::vector<Index>& sigma) { lines_.push_back(json{{"op", "align"}, {"sigma", sigma}}.dump()); }
  void end(const std::vector<Index>& sigma) { lines_.push_back(json{{"op", "end"}, {"sigma", sigma}}.dump()); }

  const std::vector<std::string>& lines() const { return lines_; }
  std::string str() const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    return out;
  }

 private:
  const PointSet* ps_;
  std::vector<std::string> lines_;
};

struct Trace {
  PointSet points;
  std::vector<Index> initial;
  std::optional<std::vector<Index>> final_sigma;
  std::vector<json> lines;  // everything after the begin line
};

inline Trace parse_trace(const std::string& text) {
  Trace tr;
  std::istringstream in(text);
  std::string line;
  bool begun = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = parse_json(line, "trace line " + std::to_string(lineno));
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
      throw ParseError("trace line " + std::to_string(lineno) + ": missing op");
    const std::string op = j["op"];
    if (op == "begin") {
      tr.points = points_from_json(j);
      tr.initial = order_from_json(j);
      begun = true;
      continue;
    }
    if (!begun) throw ParseError("trace must start with a begin line");
    if (op == "end") tr.final_sigma = order_from_json(j);
    if (op != "stretch" && op != "twang" && op != "move" && op != "align" && op != "end")
      throw ParseError("trace line " + std::to_string(lineno) + ": unknown op '" + op + "'");
    tr.lines.push_back(std::move(j));
  }
  if (!begun) throw ParseError("empty trace");
  return tr;
}

namespace detail {

// Rotates w so that its digest is `want`; false if no rotation matches.
inline bool rotate_to_digest(Wrap& w, std::uint64_t want) {
  if (digest(w.sigma()) == want) return true;
  std::vector<Index> s = w.sigma();
  for (std::size_t r = 1; r < s.size(); ++r) {
    std::rotate(s.begin(), s.begin() + 1, s.end());
    if (digest(s) == want) {
      w.rotate_to_match(s);
      return true;
    }
  }
  return false;
}

inline std::uint64_t parse_hex(const json& j) { return std::stoull(j.get<std::string>(), nullptr, 16); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("trace event lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Replays one event line on w, checking it reproduces the recorded event.
inline MoveEvent replay_event(Wrap& w, const PointSet& ps, const json& j) {
  const std::string op = j.at("op");
  if (j.contains("pre") && !detail::rotate_to_digest(w, detail::parse_hex(j["pre"])))
    throw Error(ErrorKind::ReversalMismatch, "trace pre-state does not match the replayed wrap");
  MoveEvent ev;
  if (op == "stretch") {
    const auto pos = detail::field<Position>(j, "pos");
    const auto v = detail::field<Index>(j, "v");
    if (j.value("hairpin", false)) {
      ev = apply_hairpin_stretch(w, pos, v);
    } else {
      auto t = detail::field<std::vector<std::int64_t>>(j, "t");
      if (t.size() != 2 || t[1] == 0) throw ParseError("bad stretch parameter");
      ev = apply_stretch(w, ps, pos, v, Fraction(t[0], t[1]));
    }
    auto edge = detail::field<std::vector<Index>>(j, "edge");
    auto chains = detail::field<std::vector<std::vector<Index>>>(j, "chains");
    if (edge != std::vector<Index>{ev.ea, ev.eb} || chains.size() != 2 || chains[0] != ev.chain_left ||
        chains[1] != ev.chain_right)
      throw Error(ErrorKind::ReversalMismatch, "replayed stretch differs from the trace");
  } else {
    ev = apply_twang(w, ps, detail::field<Position>(j, "pos"));
    if (detail::field<Index>(j, "a") != ev.a || detail::field<Index>(j, "b") != ev.b ||
        detail::field<Index>(j, "c") != ev.c || detail::field<std::vector<Index>>(j, "chain") != ev.chain)
      throw Error(ErrorKind::ReversalMismatch, "replayed twang differs from the trace");
    ev.in_cascade = j.value("cascade", false);
  }
  if (j.contains("post") && digest(w.sigma()) != detail::parse_hex(j["post"]))
    throw Error(ErrorKind::ReversalMismatch, "replayed post-state differs from the trace");
  return ev;
}

/// Replays a whole trace from its begin state; the result must equal the
/// end line exactly when there is one.  `on_event` sees every state change.
inline Wrap replay(const Trace& tr, const std::function<void(const Wrap&, const MoveEvent*)>& on_event = {}) {
  Wrap w(tr.points.size(), tr.initial);
  for (const json& j : tr.lines) {
    const std::string op = j.at("op");
    if (op == "stretch" || op == "twang") {
      MoveEvent ev = replay_event(w, tr.points, j);
      if (on_event) on_event(w, &ev);
    } else if (op == "align") {
      auto s = order_from_json(j);
      if (!same_cycle(w.sigma(), s)) throw Error(ErrorKind::ReversalMismatch, "align is not a rotation");
      w.rotate_to_match(s);
    }
  }
  if (tr.final_sigma && w.sigma() != *tr.final_sigma)
    throw Error(ErrorKind::ReversalMismatch, "replay does not end in the recorded final state");
  return w;
}

// ---- SVG

struct SvgOptions {
  int canvas = 800;
  int margin = 30;
  double offset = 4.0;  // pixels between the two strokes of a doubled edge
};

/// One frame: pockets shaded by level, the wrap as a closed path, doubled
/// edges redrawn as two offset strokes, double contacts highlighted.
inline std::string render_svg(const Wrap& w, const PointSet& ps, const SvgOptions& opt = {}) {
  std::int64_t x0 = ps[0].x, x1 = x0, y0 = ps[0].y, y1 = y0;
  for (const Point& p : ps.points()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double span = static_cast<double>(std::max<std::int64_t>({x1 - x0, y1 - y0, 1}));
  const double k = (opt.canvas - 2.0 * opt.margin) / span;
  auto X = [&](Index i) { return opt.margin + (static_cast<double>(ps[i].x - x0)) * k; };
  auto Y = [&](Index i) { return opt.canvas - opt.margin - (static_cast<double>(ps[i].y - y0)) * k; };

  std::ostringstream s;
  s << std::fixed << std::setprecision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.canvas << "\" height=\"" << opt.canvas
    << "\" viewBox=\"0 0 " << opt.canvas << ' ' << opt.canvas << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Pocket hulls, darker with depth.
  std::function<void(const PocketNode&)> shade = [&](const PocketNode& node) {
    if (node.level >= 2 && node.hull.size() >= 3) {
      const double alpha = std::min(0.15 * (node.level - 1), 0.75);
      s << "<polygon class=\"pocket\" data-level=\"" << node.level << "\" fill=\"steelblue\" fill-opacity=\""
        << alpha << "\" stroke=\"none\" points=\"";
      for (Index i : node.hull) s << X(i) << ',' << Y(i) << ' ';
      s << "\"/>\n";
    }
    for (const auto& c : node.children) shade(c);
  };
  try {
    shade(pocket_tree(w, ps));
  } catch (const Error&) {
    // Degenerate pockets are only decoration.
  }

  s << "<path class=\"wrap\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
  for (Position p = 0; p < w.size(); ++p) s << (p ? " L " : "M ") << X(w.at(p)) << ' ' << Y(w.at(p));
  s << " Z\"/>\n";

  std::map<std::pair<Index, Index>, int> mult;
  for (Position p = 0; p < w.size(); ++p) ++mult[detail::ukey(w.at(p), w.at(p + 1))];
  for (Position p = 0; p < w.size(); ++p) {
    const Index a = w.at(p), b = w.at(p + 1);
    if (a == b || mult[detail::ukey(a, b)] < 2) continue;
    const double dx = X(b) - X(a), dy = Y(b) - Y(a), len = std::hypot(dx, dy);
    if (len == 0) continue;
    // Offset to the left of the direction of travel, so the two traversals
    // of a doubled edge land on opposite sides.
    const double ox = -dy / len * opt.offset / 2, oy = dx / len * opt.offset / 2;
    s << "<line class=\"doubled\" stroke=\"darkorange\" stroke-width=\"1.5\" x1=\"" << X(a) + ox << "\" y1=\""
      << Y(a) + oy << "\" x2=\"" << X(b) + ox << "\" y2=\"" << Y(b) + oy << "\"/>\n";
  }

  for (Index i = 0; i < ps.size(); ++i) {
    const bool dc = w.count(i) >= 2;
    s << "<circle class=\"" << (dc ? "contact" : "vertex") << "\" cx=\"" << X(i) << "\" cy=\"" << Y(i)
      << "\" r=\"" << (dc ? 6 : 3) << "\" fill=\"" << (dc ? "crimson" : "black") << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

/// Frames of a trace: the initial state, then one after every `stride`
/// twangs.  A trace with T twangs gives T / stride + 1 frames.
inline std::vector<std::string> render_trace(const Trace& tr, int stride, const SvgOptions& opt = {}) {
  if (stride < 1) throw Error(ErrorKind::PreconditionViolated, "stride must be positive");
  std::vector<std::string> frames;
  frames.push_back(render_svg(Wrap(tr.points.size(), tr.initial), tr.points, opt));
  long long twangs = 0;
  replay(tr, [&](const Wrap& w, const MoveEvent* ev) {
    if (ev && ev->kind == EventKind::Twang && ++twangs % stride == 0) frames.push_back(render_svg(w, tr.points, opt));
  });
  return frames;
}

// ---- random walks

struct WalkStats {
  int n = 0;
  long long steps = 0;
  std::uint64_t seed = 0;
  bool inject_stretches = false;
  long long moves = 0;
  long long injected = 0;
  std::vector<int> cascades;  // twangs per move
  std::map<int, long long> histogram;

  double mean() const {
    if (cascades.empty()) return 0.0;
    return static_cast<double>(std::accumulate(cascades.begin(), cascades.end(), 0LL)) /
           static_cast<double>(cascades.size());
  }
  int max() const { return cascades.empty() ? 0 : *std::max_element(cascades.begin(), cascades.end()); }
};

inline json to_json(const WalkStats& st) {
  json hist = json::object();
  for (auto [len, c] : st.histogram) hist[std::to_string(len)] = c;
  return {{"n", st.n},
          {"steps", st.steps},
          {"seed", st.seed},
          {"inject_stretches", st.inject_stretches},
          {"moves", st.moves},
          {"injected_stretches", st.injected},
          {"cascades", st.cascades},
          {"mean", st.mean()},
          {"max", st.max()},
          {"histogram", hist}};
}

struct WalkOptions {
  int n = 100;
  long long steps = 2000;
  std::uint64_t seed = 1;
  bool inject_stretches = false;
  double inject_probability = 0.25;
  std::int64_t scale = 1000;
  CheckLevel level = CheckLevel::Boundaries;
  /// Called after every move with the journaled record.
  std::function<void(const MoveRecord&, const Wrap&)> on_move;
  /// Extra per-atomic hook, run after the built-in monitor.
  AtomicHook hook;
};

namespace detail {

// A uniform valid (edge position, vertex) pair by rejection over all pairs.
inline std::pair<Position, Index> random_valid_pair(const Wrap& w, const PointSet& ps, std::mt19937_64& rng) {
  std::uniform_int_distribution<Position> pe(0, w.size() - 1);
  std::uniform_int_distribution<Index> pv(0, ps.size() - 1);
  for (long long tries = 0; tries < 1000000; ++tries) {
    const Position e = pe(rng);
    const Index v = pv(rng);
    if (forward_move_valid(w, ps, e, v)) return {e, v};
  }
  throw Error(ErrorKind::SelectionFailure, "no valid forward move found");
}

}  // namespace detail

/// Random forward moves from the one-pocket polygonization of a random set.
/// Each step picks (e, v) uniformly among valid pairs.  With
/// inject_stretches, a step may add one more random stretch after its
/// cascade, followed by another cascade, all within the same move.
inline WalkStats random_walk(const WalkOptions& opt) {
  if (opt.steps < 1) throw Error(ErrorKind::PreconditionViolated, "steps must be positive");
  WalkStats st;
  st.n = opt.n;
  st.steps = opt.steps;
  st.seed = opt.seed;
  st.inject_stretches = opt.inject_stretches;
  const PointSet ps = random_points(opt.n, opt.seed, opt.scale);
  std::optional<InvariantMonitor> mon;
  if (opt.level == CheckLevel::EveryAtomic) mon.emplace(ps, MonitorOptions{CheckLevel::EveryAtomic, false, true});
  AtomicHook hook = opt.hook;
  if (mon) {
    hook = [inner = mon->hook(), extra = opt.hook](const Wrap& a, const Wrap& b, const MoveEvent& ev) {
      inner(a, b, ev);
      if (extra) extra(a, b, ev);
    };
  }
  MoveEngine eng(ps, Wrap(ps.size(), initial_polygonization(ps)), hook);
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::bernoulli_distribution inject(opt.inject_probability);
  CascadePolicy policy;
  for (long long s = 0; s < opt.steps; ++s) {
    auto [e, v] = detail::random_valid_pair(eng.wrap(), ps, rng);
    MoveRecord rec = forward_move(eng, e, v, policy);
    if (opt.inject_stretches && inject(rng)) {
      auto [e2, v2] = detail::random_valid_pair(eng.wrap(), ps, rng);
      const Wrap& w = eng.wrap();
      auto t = forward_target(w, ps, w.positions_of(v2).front(), e2);
      rec.events.push_back(eng.stretch(e2, v2, *t));
      auto casc = eng.cascade(policy);
      rec.events.insert(rec.events.end(), casc.begin(), casc.end());
      rec.post_digest = digest(eng.wrap().sigma());
      ++st.injected;
    }
    if (opt.level != CheckLevel::Off && !is_simple(eng.wrap(), ps))
      throw Error(ErrorKind::InvariantViolated, "walk left the space of simple polygonizations");
    ++st.moves;
    st.cascades.push_back(rec.cascade_length());
    ++st.histogram[rec.cascade_length()];
    if (opt.on_move) opt.on_move(rec, eng.wrap());
  }
  return st;
}

// ---- family statistics

struct FamilyRow {
  std::string family;
  int size = 0;
  long long twangs = 0;
  long long moves = 0;
};

/// One row per (family, size): QUADCASCADE runs its stretch move, POCKETCHAIN
/// (3 vertices per pocket) reduces every pocket into the target edge.
inline FamilyRow family_run(Family f, int size, std::uint64_t seed = 1) {
  FamilyRow row{to_string(f), size, 0, 0};
  if (f == Family::QuadCascade) {
    auto q = gen_quadratic_cascade(size, seed);
    MoveEngine eng(q.points, Wrap(q.points.size(), q.order));
    auto pos = detail::edge_position(eng.wrap(), q.edge_a, q.edge_b);
    auto rec = forward_move(eng, *pos, q.v);
    row.twangs = rec.twang_count();
    row.moves = 1;
  } else if (f == Family::PocketChain) {
    auto c = gen_pocket_chain(size, 3);
    MoveEngine eng(c.points, Wrap(c.points.size(), c.order));
    Journal j;
    pocket_reduction(eng, c.lids.back().first, c.lids.back().second, j);
    row.moves = static_cast<long long>(j.size());
    for (const auto& r : j) row.twangs += r.twang_count();
  } else {
    throw Error(ErrorKind::PreconditionViolated, std::string("no statistics sweep for family ") + to_string(f));
  }
  return row;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) return std::nan("");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxx == 0 ? std::nan("") : sxy / sxx;
}

inline std::string rows_to_csv(const std::vector<FamilyRow>& rows) {
  std::string out = "family,size,twangs,moves\n";
  for (const auto& r : rows)
    out += r.family + "," + std::to_string(r.size) + "," + std::to_string(r.twangs) + "," + std::to_string(r.moves) + "\n";
  return out;
}

}  // namespace polywrap
