// polywrap: command-line front end.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "polywrap/io.hpp"

namespace pw = polywrap;
using pw::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kNotSimple = 3, kInvariant = 4 };

struct NotSimple : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<pw::Index, pw::Index> parse_lid(const std::string& s) {
  std::istringstream in(s);
  long a = 0, b = 0;
  char comma = 0;
  if (!(in >> a >> comma >> b) || comma != ',' || !in.eof()) throw pw::ParseError("lid must be 'a,b'");
  return {static_cast<pw::Index>(a), static_cast<pw::Index>(b)};
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    pw::write_text(path, text);
  }
}

pw::CheckLevel level(pw::CheckLevel fallback) { return pw::check_level_from_env(fallback); }

int run_transform(const std::string& points, const std::string& from, const std::string& to,
                  const std::string& trace_path, const std::string& summary_path) {
  const pw::PointSet ps = pw::points_from_json(pw::read_json(points));
  const auto p1 = pw::polygon_from_json(pw::read_json(from), ps);
  const auto p2 = pw::polygon_from_json(pw::read_json(to), ps);
  if (!pw::is_simple(p1, ps)) throw NotSimple("'from' is not a simple polygonization");
  if (!pw::is_simple(p2, ps)) throw NotSimple("'to' is not a simple polygonization");

  const pw::CheckLevel lv = level(pw::CheckLevel::Boundaries);
  pw::InvariantMonitor mon(ps, pw::MonitorOptions{lv, false, true});
  pw::TransformOptions opt;
  if (lv == pw::CheckLevel::EveryAtomic) opt.hook = mon.hook();
  opt.on_move = [&](const pw::MoveRecord&, const pw::Wrap& w) { mon.check_polygon(w); };
  pw::TransformResult res = pw::transform(ps, p1, p2, opt);

  pw::TraceWriter tw(ps);
  tw.begin(pw::ccw(p1, ps));
  for (const auto* j : {&res.forward, &res.reversed})
    for (const pw::MoveRecord& r : *j) {
      tw.move(r);
      for (const auto& ev : r.events) tw.event(ev);
    }
  tw.end(res.result);
  if (!trace_path.empty()) pw::write_text(trace_path, tw.str());

  json summary{{"moves", res.budget.moves()},
               {"atomic_moves", res.budget.atomic_moves()},
               {"ok", res.ok},
               {"forward_moves", res.budget.forward_moves()},
               {"reverse_moves", res.budget.reverse_moves},
               {"stretches", res.budget.stretches},
               {"twangs", res.budget.twangs},
               {"lid", {res.lid.first, res.lid.second}},
               {"result", res.result}};
  emit(summary.dump(2) + "\n", summary_path);
  if (!summary_path.empty()) std::cout << summary.dump() << "\n";
  return res.ok ? kOk : kInvariant;
}

int run_canonical(const std::string& points, const std::string& poly, const std::string& lid_s,
                  const std::string& out) {
  const pw::PointSet ps = pw::points_from_json(pw::read_json(points));
  const auto p = pw::polygon_from_json(pw::read_json(poly), ps);
  const auto lid = parse_lid(lid_s);
  if (lid.first < 0 || lid.second < 0 || lid.first >= ps.size() || lid.second >= ps.size())
    throw pw::ParseError("lid index out of range");
  if (!pw::is_simple(p, ps)) throw NotSimple("polygonization is not simple");
  const pw::CheckLevel lv = level(pw::CheckLevel::Boundaries);
  pw::InvariantMonitor mon(ps, pw::MonitorOptions{lv, false, true});
  pw::MoveEngine eng(ps, pw::Wrap(ps.size(), pw::ccw(p, ps)), lv == pw::CheckLevel::EveryAtomic ? mon.hook() : pw::AtomicHook{});
  pw::Journal journal;
  std::vector<pw::SingleReport> reductions;
  pw::ReductionOptions opt;
  opt.on_move = [&](const pw::MoveRecord&, const pw::Wrap& w) { mon.check_polygon(w); };
  auto rep = pw::to_canonical(eng, lid, journal, reductions, opt);
  long long reduction_moves = 0;
  for (const auto& r : reductions) reduction_moves += r.iterations;
  json j{{"order", eng.wrap().sigma()},
         {"lid", {lid.first, lid.second}},
         {"moves", static_cast<long long>(journal.size())},
         {"reduction_moves", reduction_moves},
         {"canonical_moves", rep.moves}};
  emit(j.dump() + "\n", out);
  return kOk;
}

int run_walk(int n, long long steps, std::uint64_t seed, bool inject, std::int64_t scale, const std::string& out) {
  pw::WalkOptions o;
  o.n = n;
  o.steps = steps;
  o.seed = seed;
  o.inject_stretches = inject;
  o.scale = scale;
  o.level = level(pw::CheckLevel::Boundaries);
  emit(pw::to_json(pw::random_walk(o)).dump() + "\n", out);
  return kOk;
}

int run_gen(const std::string& family, int k, int n, std::uint64_t seed, std::int64_t scale, const std::string& out) {
  auto f = pw::parse_family(family);
  if (!f) throw pw::ParseError("unknown family '" + family + "'");
  pw::FamilySpec spec{*f, 0, seed, scale};
  json params;
  if (*f == pw::Family::Pow2k || *f == pw::Family::Pinwheel || *f == pw::Family::PocketChain) {
    if (k <= 0) throw pw::ParseError(std::string("--k is required for ") + pw::to_string(*f));
    spec.size = k;
    params["k"] = k;
    if (*f == pw::Family::PocketChain) params["r"] = 3;
  } else {
    if (n <= 0) throw pw::ParseError(std::string("--n is required for ") + pw::to_string(*f));
    spec.size = n;
    params["n"] = n;
  }
  if (scale) params["scale"] = scale;
  pw::FamilyInstance inst = pw::generate(spec);
  json j = pw::points_to_json(inst.points);
  j["family"] = pw::to_string(*f);
  j["params"] = params;
  j["seed"] = seed;
  if (!inst.order.empty()) j["order"] = inst.order;
  if (inst.stretch_edge) j["stretch"] = {{"edge", {inst.stretch_edge->first, inst.stretch_edge->second}}, {"v", *inst.stretch_vertex}};
  if (!inst.lids.empty()) {
    json lids = json::array();
    for (auto [a, b] : inst.lids) lids.push_back({a, b});
    j["lids"] = lids;
  }
  emit(j.dump() + "\n", out);
  return kOk;
}

int run_enumerate(const std::string& points, const std::string& out) {
  const pw::PointSet ps = pw::points_from_json(pw::read_json(points));
  auto all = pw::enumerate_polygonizations(ps);
  json j{{"count", all.size()}, {"polygonizations", all}};
  emit(j.dump() + "\n", out);
  return kOk;
}

int run_stats(const std::string& families, const std::string& sizes, std::uint64_t seed, const std::string& out) {
  std::vector<pw::FamilyRow> rows;
  std::vector<std::string> slopes;
  for (const auto& name : split(families)) {
    auto f = pw::parse_family(name);
    if (!f) throw pw::ParseError("unknown family '" + name + "'");
    std::vector<double> xs, ys;
    for (const auto& s : split(sizes)) {
      int size = 0;
      try {
        size = std::stoi(s);
      } catch (const std::exception&) {
        throw pw::ParseError("bad size '" + s + "'");
      }
      rows.push_back(pw::family_run(*f, size, seed));
      const auto& r = rows.back();
      // Slope in the number of points.
      const double npts = *f == pw::Family::PocketChain ? size * 5.0 + 2 : size;
      const double y = *f == pw::Family::PocketChain ? static_cast<double>(r.moves) : static_cast<double>(r.twangs);
      if (y > 0) {
        xs.push_back(npts);
        ys.push_back(y);
      }
    }
    if (xs.size() >= 2) {
      std::ostringstream ss;
      ss << "# slope," << pw::to_string(*f) << "," << pw::loglog_slope(xs, ys) << "\n";
      slopes.push_back(ss.str());
    }
  }
  std::string csv = pw::rows_to_csv(rows);
  for (const auto& s : slopes) csv += s;
  emit(csv, out);
  return kOk;
}

int run_render(const std::string& in, const std::string& dir, int stride, int canvas) {
  const std::string text = pw::read_text(in);
  pw::SvgOptions opt;
  opt.canvas = canvas;
  std::vector<std::string> frames;
  const auto first = text.find_first_not_of(" \t\r\n");
  bool is_trace = false;
  if (first != std::string::npos) {
    const auto eol = text.find('\n', first);
    json head = pw::parse_json(text.substr(first, eol == std::string::npos ? std::string::npos : eol - first), in);
    is_trace = head.is_object() && head.contains("op");
  }
  if (is_trace) {
    frames = pw::render_trace(pw::parse_trace(text), stride, opt);
  } else {
    json j = pw::parse_json(text, in);
    pw::PointSet ps = pw::points_from_json(j);
    auto sigma = pw::order_from_json(j);
    pw::Wrap w;
    try {
      w = pw::Wrap(ps.size(), sigma);
    } catch (const pw::Error& e) {
      throw pw::ParseError(e.what());
    }
    frames.push_back(pw::render_svg(w, ps, opt));
  }
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::ostringstream name;
    name << "frame_" << std::setw(4) << std::setfill('0') << i << ".svg";
    pw::write_text((std::filesystem::path(dir) / name.str()).string(), frames[i]);
  }
  std::cout << json{{"frames", frames.size()}, {"dir", dir}}.dump() << "\n";
  return kOk;
}

int run_replay(const std::string& in) {
  pw::Trace tr = pw::parse_trace(pw::read_text(in));
  pw::Wrap w = pw::replay(tr);
  std::cout << json{{"sigma", w.sigma()}, {"matches_end", tr.final_sigma.has_value()}}.dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polygonization moves: transforms, cascades, generators"};
  app.require_subcommand(1);

  std::string points, from, to, trace, summary, poly, lid, out, family, families, sizes, in, svg_dir;
  int n = 0, k = 0, stride = 1, canvas = 800;
  long long steps = 1;
  std::uint64_t seed = 1;
  std::int64_t scale = 0;
  bool inject = false;

  auto* tr = app.add_subcommand("transform", "transform one polygonization into another");
  tr->add_option("--points", points)->required();
  tr->add_option("--from", from)->required();
  tr->add_option("--to", to)->required();
  tr->add_option("--trace", trace);
  tr->add_option("--summary", summary);

  auto* ca = app.add_subcommand("canonical", "reduce a polygonization to the canonical one for a lid");
  ca->add_option("--points", points)->required();
  ca->add_option("--poly", poly)->required();
  ca->add_option("--lid", lid)->required();
  ca->add_option("--out", out);

  auto* rw = app.add_subcommand("random-walk", "random forward moves with cascade statistics");
  rw->add_option("--n", n)->required();
  rw->add_option("--steps", steps)->required();
  rw->add_option("--seed", seed);
  rw->add_flag("--inject-stretches", inject);
  rw->add_option("--scale", scale);
  rw->add_option("--out", out);

  auto* ge = app.add_subcommand("gen", "generate a family instance");
  ge->add_option("--family", family)->required();
  ge->add_option("--k", k);
  ge->add_option("--n", n);
  ge->add_option("--seed", seed);
  ge->add_option("--scale", scale);
  ge->add_option("--out", out);

  auto* en = app.add_subcommand("enumerate", "all polygonizations of a small point set");
  en->add_option("--points", points)->required();
  en->add_option("--out", out);

  auto* st = app.add_subcommand("stats", "family sweep as CSV");
  st->add_option("--families", families);
  st->add_option("--sizes", sizes);
  st->add_option("--seed", seed);
  st->add_option("--out", out);

  auto* re = app.add_subcommand("render", "SVG frames of a wrap or a trace");
  re->add_option("--in", in)->required();
  re->add_option("--svg-out", svg_dir)->required();
  re->add_option("--stride", stride)->check(CLI::PositiveNumber);
  re->add_option("--canvas", canvas)->check(CLI::PositiveNumber);

  auto* rp = app.add_subcommand("replay", "replay a trace and check its end state");
  rp->add_option("--in", in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*tr) return run_transform(points, from, to, trace, summary);
    if (*ca) return run_canonical(points, poly, lid, out);
    if (*rw) return run_walk(n, steps, seed, inject, scale ? scale : 1000, out);
    if (*ge) return run_gen(family, k, n, seed, scale, out);
    if (*en) return run_enumerate(points, out);
    if (*st) return run_stats(families, sizes, seed, out);
    if (*re) return run_render(in, svg_dir, stride, canvas);
    if (*rp) return run_replay(in);
  } catch (const pw::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const NotSimple& e) {
    std::cerr << "not simple: " << e.what() << "\n";
    return kNotSimple;
  } catch (const pw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case pw::ErrorKind::InvariantViolated:
      case pw::ErrorKind::ReversalMismatch:
      case pw::ErrorKind::StuckCascade:
      case pw::ErrorKind::CascadeCapExceeded:
      case pw::ErrorKind::NonSimpleResult:
        return kInvariant;
      default:
        return kFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
