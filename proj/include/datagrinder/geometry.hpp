#pragma once

// 2D convex hull construction. Three interchangeable builders share one
// canonical output form (split upper/lower chains):
//   * classic_convex_hull          -- sort + monotone scan
//   * naive_convex_hull            -- O(n^3) half-space reference
//   * candidate_elimination_convex_hull -- expected-linear, works by
//     discarding interior candidates against moving chord lines
// Scans are instrumented with a point-read counter so the builders can be
// compared by data touched instead of wall time.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dgr {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

// Lexicographic (x, then y) order; used for sorting and chain endpoints.
constexpr bool lex_less(const Point2& a, const Point2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}
constexpr bool operator<(const Point2& a, const Point2& b) { return lex_less(a, b); }

// Instrumentation counter. Conventions, applied uniformly:
//   * sorting n points charges n * ceil(log2 n)
//   * any pass over a list of m points charges m
//   * each three-point orientation check in a backtrack loop charges 1
struct ReadCounter {
  std::uint64_t reads = 0;
  void add(std::uint64_t n) { reads += n; }
  void reset() { reads = 0; }
};

inline void charge(ReadCounter* rc, std::uint64_t n) {
  if (rc != nullptr) rc->add(n);
}

// Signed area test: positive when b lies strictly above the directed line
// a->c (taking a.x <= c.x), negative when strictly below, zero when the
// three points are collinear. Comparisons are exact; no epsilon.
constexpr double uh_sign(const Point2& a, const Point2& b, const Point2& c) {
  return (b.y - a.y) * (c.x - a.x) - (b.x - a.x) * (c.y - a.y);
}

// True when b is on or above segment a->c; collinear points pass.
constexpr bool uh_check(const Point2& a, const Point2& b, const Point2& c) {
  return uh_sign(a, b, c) >= 0.0;
}

struct Hull {
  std::vector<Point2> upper;  // left-to-right, X_min .. X_max
  std::vector<Point2> lower;  // left-to-right, X_min .. X_max
  friend bool operator==(const Hull&, const Hull&) = default;
};

// Raised when the input has fewer than three distinct points or is fully
// collinear; `chain` carries the surviving canonical chain.
class DegenerateHull : public std::runtime_error {
 public:
  explicit DegenerateHull(std::vector<Point2> surviving)
      : std::runtime_error("degenerate hull: fewer than three distinct, non-collinear points"),
        chain(std::move(surviving)) {}
  std::vector<Point2> chain;
};

inline std::uint64_t ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(n - 1));
}

// Sort lexicographically and drop exact duplicates.
inline std::vector<Point2> sort_points(std::vector<Point2> pts, ReadCounter* rc = nullptr) {
  if (pts.empty()) throw std::invalid_argument("sort_points: empty input");
  charge(rc, pts.size() * ceil_log2(pts.size()));
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace detail {

// Append-and-backtrack scan shared by both chains. `keep` decides whether
// the middle point of the trailing triple survives.
template <typename Keep>
std::vector<Point2> monotone_chain(const std::vector<Point2>& sorted, Keep keep, ReadCounter* rc) {
  if (sorted.empty()) throw std::invalid_argument("monotone chain: empty input");
  std::vector<Point2> chain;
  chain.reserve(sorted.size() < 64 ? sorted.size() : 64);
  for (const Point2& p : sorted) {
    charge(rc, 1);
    chain.push_back(p);
    while (chain.size() > 2) {
      charge(rc, 1);
      if (keep(chain[chain.size() - 3], chain[chain.size() - 2], chain.back())) break;
      chain.erase(chain.end() - 2);
    }
  }
  return chain;
}

}  // namespace detail

// Upper chain of a lexicographically sorted, deduplicated point list.
// Collinear middle points are kept (non-negative convention).
inline std::vector<Point2> find_upper_hull(const std::vector<Point2>& sorted, ReadCounter* rc = nullptr) {
  return detail::monotone_chain(
      sorted, [](const Point2& a, const Point2& b, const Point2& c) { return uh_check(a, b, c); }, rc);
}

// Mirror image of find_upper_hull: middles on or below the segment stay.
inline std::vector<Point2> find_lower_hull(const std::vector<Point2>& sorted, ReadCounter* rc = nullptr) {
  return detail::monotone_chain(
      sorted, [](const Point2& a, const Point2& b, const Point2& c) { return uh_sign(a, b, c) <= 0.0; }, rc);
}

// Remove interior chain vertices exactly collinear with their neighbours
// (and consecutive duplicates); endpoints survive. Idempotent.
inline std::vector<Point2> canonicalize_chain(const std::vector<Point2>& chain) {
  std::vector<Point2> out;
  out.reserve(chain.size());
  for (const Point2& p : chain) {
    if (!out.empty() && p == out.back()) continue;
    while (out.size() >= 2 && uh_sign(out[out.size() - 2], out.back(), p) == 0.0) out.pop_back();
    out.push_back(p);
  }
  return out;
}

inline Hull canonicalize_hull(const Hull& h) {
  return Hull{canonicalize_chain(h.upper), canonicalize_chain(h.lower)};
}

namespace detail {

// A hull is degenerate exactly when its canonical chains coincide (a
// point or a segment encloses no area).
inline void throw_if_degenerate(const Hull& h) {
  Hull c = canonicalize_hull(h);
  if (c.upper == c.lower) throw DegenerateHull(std::move(c.upper));
}

}  // namespace detail

// Sort + two monotone scans. Raw chains may retain collinear boundary
// points; compare hulls through canonicalize_hull.
inline Hull classic_convex_hull(const std::vector<Point2>& pts, ReadCounter* rc = nullptr) {
  std::vector<Point2> sorted = sort_points(pts, rc);
  Hull h{find_upper_hull(sorted, rc), find_lower_hull(sorted, rc)};
  detail::throw_if_degenerate(h);
  return h;
}

// Brute-force reference: a segment lies on the hull boundary iff no two
// points sit strictly on opposite sides of its line. O(n^3); intended as
// a test oracle and benchmark yardstick. Returns the canonical hull. The
// counter charges one read per point probed in the half-space test.
inline Hull naive_convex_hull(const std::vector<Point2>& pts, ReadCounter* rc = nullptr) {
  if (pts.empty()) throw std::invalid_argument("naive_convex_hull: empty input");
  std::vector<Point2> s = pts;
  std::sort(s.begin(), s.end(), lex_less);
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() < 3) throw DegenerateHull(std::move(s));

  std::vector<char> on_hull(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      bool above = false;
      bool below = false;
      for (std::size_t r = 0; r < s.size(); ++r) {
        if (r == i || r == j) continue;
        charge(rc, 1);
        const double d = uh_sign(s[i], s[r], s[j]);
        above = above || d > 0.0;
        below = below || d < 0.0;
        if (above && below) break;
      }
      if (!(above && below)) on_hull[i] = on_hull[j] = 1;
    }
  }

  std::vector<Point2> verts;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (on_hull[i]) verts.push_back(s[i]);
  const Point2 lo = verts.front();
  const Point2 hi = verts.back();
  // Split boundary points around the lo->hi chord. Points exactly on the
  // chord (other than its endpoints) only arise when the chord itself is a
  // hull edge, i.e. when one side has no strict points; they belong to
  // that side's chain.
  std::vector<Point2> upper{lo}, lower{lo}, mid;
  for (const Point2& v : verts) {
    if (v == lo || v == hi) continue;
    const double d = uh_sign(lo, v, hi);
    if (d > 0.0) upper.push_back(v);
    else if (d < 0.0) lower.push_back(v);
    else mid.push_back(v);
  }
  if (upper.size() == 1) upper.insert(upper.end(), mid.begin(), mid.end());
  if (lower.size() == 1) lower.insert(lower.end(), mid.begin(), mid.end());
  upper.push_back(hi);
  lower.push_back(hi);
  Hull h{canonicalize_chain(upper), canonicalize_chain(lower)};
  if (h.upper == h.lower) throw DegenerateHull(std::move(h.upper));
  return h;
}

// ============================ candidate elimination ============================

struct Extremes {
  Point2 x_min, x_max, y_min, y_max;
};

// Single pass over P; ties go to the first occurrence in input order.
inline Extremes find_extremes(const std::vector<Point2>& pts, ReadCounter* rc = nullptr) {
  if (pts.empty()) throw std::invalid_argument("find_extremes: empty input");
  charge(rc, pts.size());
  Extremes e{pts.front(), pts.front(), pts.front(), pts.front()};
  for (const Point2& p : pts) {
    if (p.x < e.x_min.x) e.x_min = p;
    if (p.x > e.x_max.x) e.x_max = p;
    if (p.y < e.y_min.y) e.y_min = p;
    if (p.y > e.y_max.y) e.y_max = p;
  }
  return e;
}

// Anchor variant used by hull assembly: X extremes ordered by (x, y) and Y
// extremes by (y, x). Exact coordinate ties then split chains identically
// across algorithms and input permutations, which the first-occurrence
// rule cannot guarantee.
inline Extremes hull_anchors(const std::vector<Point2>& pts, ReadCounter* rc = nullptr) {
  if (pts.empty()) throw std::invalid_argument("hull_anchors: empty input");
  charge(rc, pts.size());
  Extremes e{pts.front(), pts.front(), pts.front(), pts.front()};
  auto y_less = [](const Point2& a, const Point2& b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  };
  for (const Point2& p : pts) {
    if (lex_less(p, e.x_min)) e.x_min = p;
    if (lex_less(e.x_max, p)) e.x_max = p;
    if (y_less(p, e.y_min)) e.y_min = p;
    if (y_less(e.y_max, p)) e.y_max = p;
  }
  return e;
}

enum class Quarter { upper_left, upper_right, lower_left, lower_right };

struct CandidateLists {
  std::vector<Point2> upper_left, upper_right, lower_left, lower_right;
  std::size_t total() const {
    return upper_left.size() + upper_right.size() + lower_left.size() + lower_right.size();
  }
};

// One pass over P: each point is read once and tested against the four
// chord lines; it joins every quarter whose closed half-plane admits it.
// Points strictly inside the extreme-point quadrilateral join none. A
// quarter whose two anchors coincide holds just that anchor.
inline CandidateLists initial_candidate_elimination(const std::vector<Point2>& pts, const Extremes& ex,
                                                    ReadCounter* rc = nullptr) {
  if (pts.empty()) throw std::invalid_argument("initial_candidate_elimination: empty input");
  charge(rc, pts.size());
  CandidateLists cl;
  const bool ul = !(ex.x_min == ex.y_max);
  const bool ur = !(ex.y_max == ex.x_max);
  const bool ll = !(ex.x_min == ex.y_min);
  const bool lr = !(ex.y_min == ex.x_max);
  for (const Point2& p : pts) {
    if (ul && uh_sign(ex.x_min, p, ex.y_max) >= 0.0) cl.upper_left.push_back(p);
    if (ur && uh_sign(ex.y_max, p, ex.x_max) >= 0.0) cl.upper_right.push_back(p);
    if (ll && uh_sign(ex.x_min, p, ex.y_min) <= 0.0) cl.lower_left.push_back(p);
    if (lr && uh_sign(ex.y_min, p, ex.x_max) <= 0.0) cl.lower_right.push_back(p);
  }
  if (!ul) cl.upper_left.push_back(ex.x_min);
  if (!ur) cl.upper_right.push_back(ex.y_max);
  if (!ll) cl.lower_left.push_back(ex.x_min);
  if (!lr) cl.lower_right.push_back(ex.y_min);
  return cl;
}

// One quarter of the hull between its two anchors (given left-to-right:
// UL (X_min, Y_max), UR (Y_max, X_max), LL (X_min, Y_min), LR (Y_min, X_max)).
// Mirrors the quarter into the upper-left frame, then repeats: one pass
// over the surviving candidates (cost |candidates|) discards everything
// strictly below the line through the previously extracted point and the
// quarter apex while selecting the next extreme point, which is appended
// with an Alg.-1-style convexity backtrack. Deferring each elimination
// into the following selection pass removes the same points as an eager
// per-step elimination scan, so chains are identical and each candidate
// is read once per round instead of twice.
inline std::vector<Point2> find_quarter_hull(const std::vector<Point2>& candidates, Quarter q,
                                             const Point2& left, const Point2& right,
                                             ReadCounter* rc = nullptr) {
  if (left == right) return {left};
  const bool flip_x = (q == Quarter::upper_right || q == Quarter::lower_right);
  const bool flip_y = (q == Quarter::lower_left || q == Quarter::lower_right);
  const double sx = flip_x ? -1.0 : 1.0;
  const double sy = flip_y ? -1.0 : 1.0;
  auto mirror = [&](const Point2& p) { return Point2{sx * p.x, sy * p.y}; };
  const Point2 apex = mirror(flip_x ? left : right);  // the quarter's Y extreme

  std::vector<Point2> work;
  work.reserve(candidates.size());
  for (const Point2& p : candidates) work.push_back(mirror(p));
  if (work.empty()) work = {mirror(left), mirror(right)};

  std::vector<Point2> chain;
  bool have_cut = false;
  Point2 cut{};  // previous extraction; the pending elimination line is cut->apex
  while (!work.empty()) {
    charge(rc, work.size());
    std::size_t kept = 0;
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (have_cut && uh_sign(cut, work[i], apex) < 0.0) continue;  // eliminated
      work[kept] = work[i];
      if (best == static_cast<std::size_t>(-1) || lex_less(work[kept], work[best])) best = kept;
      ++kept;
    }
    work.resize(kept);
    if (work.empty()) break;
    const Point2 next = work[best];
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
    if (!(next == apex)) {
      cut = next;
      have_cut = true;
    }
    // Copies of one point are extracted back to back; a repeated vertex
    // would stall the backtrack below (zero-sign triple), so skip it.
    if (!chain.empty() && next == chain.back()) continue;
    chain.push_back(next);
    while (chain.size() > 2) {
      charge(rc, 1);
      if (uh_check(chain[chain.size() - 3], chain[chain.size() - 2], chain.back())) break;
      chain.erase(chain.end() - 2);
    }
  }
  if (flip_x) std::reverse(chain.begin(), chain.end());
  for (Point2& p : chain) p = mirror(p);
  return chain;
}

namespace detail {

inline void append_chain(std::vector<Point2>& dst, const std::vector<Point2>& src) {
  std::size_t from = (!dst.empty() && !src.empty() && dst.back() == src.front()) ? 1 : 0;
  dst.insert(dst.end(), src.begin() + static_cast<std::ptrdiff_t>(from), src.end());
}

}  // namespace detail

// Expected-linear hull: one extremes pass, one candidate-classification
// pass, then four quarter scans whose candidate lists shrink geometrically.
inline Hull candidate_elimination_convex_hull(const std::vector<Point2>& pts, ReadCounter* rc = nullptr) {
  if (pts.empty()) throw std::invalid_argument("candidate_elimination_convex_hull: empty input");
  const Extremes ax = hull_anchors(pts, rc);
  const CandidateLists cl = initial_candidate_elimination(pts, ax, rc);
  const std::vector<Point2> ul = find_quarter_hull(cl.upper_left, Quarter::upper_left, ax.x_min, ax.y_max, rc);
  const std::vector<Point2> ur = find_quarter_hull(cl.upper_right, Quarter::upper_right, ax.y_max, ax.x_max, rc);
  const std::vector<Point2> ll = find_quarter_hull(cl.lower_left, Quarter::lower_left, ax.x_min, ax.y_min, rc);
  const std::vector<Point2> lr = find_quarter_hull(cl.lower_right, Quarter::lower_right, ax.y_min, ax.x_max, rc);
  Hull h;
  detail::append_chain(h.upper, ul);
  detail::append_chain(h.upper, ur);
  detail::append_chain(h.lower, ll);
  detail::append_chain(h.lower, lr);
  detail::throw_if_degenerate(h);
  return h;
}

// ============================ containment ============================

// Boundary-inclusive point-in-convex-polygon test against a hull's chains.
// Accepts degenerate hulls whose chains are a shared segment or point.
// Binary-searches the bracketing edge; vertical edges only occur at the
// extreme columns and are resolved by y-interval there.
inline bool point_in_hull(const Hull& h, const Point2& p) {
  const std::vector<Point2>& up = h.upper;
  const std::vector<Point2>& lo = h.lower;
  if (up.empty() || lo.empty()) return false;
  const Point2 x_min = up.front();
  const Point2 x_max = up.back();
  if (p.x < x_min.x || p.x > x_max.x) return false;

  if (p.x == x_min.x || p.x == x_max.x) {
    double top, bot;
    if (p.x == x_min.x) {
      std::size_t i = 0;
      while (i + 1 < up.size() && up[i + 1].x == x_min.x) ++i;
      top = up[i].y;
    } else {
      top = x_max.y;
    }
    if (p.x == x_max.x) {
      std::size_t i = lo.size() - 1;
      while (i > 0 && lo[i - 1].x == x_max.x) --i;
      bot = lo[i].y;
    } else {
      bot = x_min.y;
    }
    return bot <= p.y && p.y <= top;
  }

  auto side_ok = [&p](const std::vector<Point2>& chain, bool is_upper) {
    auto it = std::upper_bound(chain.begin(), chain.end(), p.x,
                               [](double v, const Point2& q) { return v < q.x; });
    const std::size_t j = static_cast<std::size_t>(it - chain.begin());
    const double d = uh_sign(chain[j - 1], p, chain[j]);
    return is_upper ? d <= 0.0 : d >= 0.0;
  };
  return side_ok(up, true) && side_ok(lo, false);
}

}  // namespace dgr
