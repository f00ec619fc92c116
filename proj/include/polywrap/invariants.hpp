#pragma once
// Per-move invariant monitoring, installed as the engine's atomic hook.

#include <cstdlib>
#include <string>
#include <vector>

#include "polywrap/moves.hpp"
#include "polywrap/pockets.hpp"

namespace polywrap {

enum class CheckLevel { Off, Boundaries, EveryAtomic };

inline CheckLevel parse_check_level(const std::string& s) {
  if (s == "off") return CheckLevel::Off;
  if (s == "boundaries") return CheckLevel::Boundaries;
  if (s == "every-atomic") return CheckLevel::EveryAtomic;
  throw Error(ErrorKind::PreconditionViolated, "unknown check level '" + s + "'");
}

/// POLYWRAP_CHECK_LEVEL, when set, overrides `fallback`.
inline CheckLevel check_level_from_env(CheckLevel fallback) {
  const char* s = std::getenv("POLYWRAP_CHECK_LEVEL");
  return s && *s ? parse_check_level(s) : fallback;
}

struct InvariantStats {
  long long atomic_checked = 0;
  long long weak_violations = 0;
  long long twangs_checked = 0;
  long long perimeter_violations = 0;
  double min_perimeter_margin = 1e300;  // observed decrease minus the bound
  long long hull_vertex_twangs = 0;
  long long descent_checked = 0;
  long long descent_violations = 0;
  long long nesting_checked = 0;
  long long nesting_violations = 0;
  std::vector<std::string> messages;  // first few violations

  long long violations() const {
    return weak_violations + perimeter_violations + hull_vertex_twangs + descent_violations +
           nesting_violations;
  }
};

struct MonitorOptions {
  CheckLevel level = CheckLevel::EveryAtomic;
  bool pocket_checks = false;  // pocket-vector descent and hull nesting per twang
  bool strict = false;         // throw InvariantViolated on any violation
};

/// Checks every atomic move reported by a MoveEngine.  Weak-simplicity
/// failures always throw, since later moves would run on a corrupt wrap.
class InvariantMonitor {
 public:
  InvariantMonitor(const PointSet& ps, MonitorOptions opt)
      : ps_(&ps), opt_(opt), geo_(geometry_stats(ps)), on_hull_(static_cast<std::size_t>(ps.size()), 0) {
    for (Index i : convex_hull(ps).boundary) on_hull_[static_cast<std::size_t>(i)] = 1;
  }

  const InvariantStats& stats() const { return stats_; }
  const GeometryStats& geometry() const { return geo_; }
  const MonitorOptions& options() const { return opt_; }

  AtomicHook hook() {
    return [this](const Wrap& before, const Wrap& after, const MoveEvent& ev) { check(before, after, ev); };
  }

  /// Boundary check for a finished move: the result must be a simple polygon.
  void check_polygon(const Wrap& w) const {
    if (opt_.level == CheckLevel::Off) return;
    if (!is_simple(w, *ps_))
      throw Error(ErrorKind::InvariantViolated, "move did not end in a simple polygonization");
  }

  void check(const Wrap& before, const Wrap& after, const MoveEvent& ev) {
    if (opt_.level != CheckLevel::EveryAtomic) return;
    ++stats_.atomic_checked;
    if (auto wc = weak_simplicity_check(after, *ps_); !wc) {
      ++stats_.weak_violations;
      throw Error(ErrorKind::InvariantViolated, "weak simplicity: " + wc.description);
    }
    if (ev.kind != EventKind::Twang) return;
    ++stats_.twangs_checked;
    const double drop = perimeter(before, *ps_) - perimeter(after, *ps_);
    stats_.min_perimeter_margin = std::min(stats_.min_perimeter_margin, drop - geo_.twang_bound);
    if (drop < geo_.twang_bound - 1e-9) fail(stats_.perimeter_violations, "perimeter drop below bound");
    const bool b_on_hull = on_hull_[static_cast<std::size_t>(ev.b)] != 0;
    if (ev.in_cascade && b_on_hull) fail(stats_.hull_vertex_twangs, "hull vertex twanged in a cascade");
    if (!opt_.pocket_checks) return;

    PocketNode tb = pocket_tree(before, *ps_), ta = pocket_tree(after, *ps_);
    if (b_on_hull) return;
    ++stats_.descent_checked;
    if (!lex_less(pocket_vector(ta), pocket_vector(tb))) fail(stats_.descent_violations, "pocket vector did not decrease");
    for (const PocketNode& pa : ta.children) {
      ++stats_.nesting_checked;
      const PocketNode* pb = find_pocket(tb.children, pa.lid_a, pa.lid_b);
      if (!pb || !hull_nested(*ps_, pa, *pb)) fail(stats_.nesting_violations, "pocket hull grew");
    }
  }

 private:
  void fail(long long& counter, const std::string& what) {
    ++counter;
    if (stats_.messages.size() < 16) stats_.messages.push_back(what);
    if (opt_.strict) throw Error(ErrorKind::InvariantViolated, what);
  }

  const PointSet* ps_;
  MonitorOptions opt_;
  GeometryStats geo_;
  std::vector<char> on_hull_;
  InvariantStats stats_;
};

}  // namespace polywrap
