#pragma once

// Shared helpers for the test suite: deterministic point generators plus
// containment/equality oracles that stay independent of the hull code they
// are used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "datagrinder/geometry.hpp"
#include "datagrinder/pointgen.hpp"

namespace test_support {

using dgr::gaussian_point;
using dgr::gaussian_points;
using dgr::uniform_point;
using dgr::uniform_points;

// Random points on a small integer lattice: exercises duplicates, exact
// collinearity and coordinate ties.
inline std::vector<dgr::Point2> lattice_points(std::size_t n, int extent, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<dgr::Point2> pts(n);
  for (auto& p : pts) {
    p.x = static_cast<double>(static_cast<int>(gen() % static_cast<std::uint64_t>(extent + 1)));
    p.y = static_cast<double>(static_cast<int>(gen() % static_cast<std::uint64_t>(extent + 1)));
  }
  return pts;
}

// Containment oracle independent of point_in_hull: walk the hull boundary
// counter-clockwise (lower chain, then reversed upper chain) and require p
// on or left of every directed edge, after a bounding-box precheck.
inline bool polygon_contains(const dgr::Hull& hull, const dgr::Point2& p) {
  const dgr::Hull h = dgr::canonicalize_hull(hull);
  std::vector<dgr::Point2> poly = h.lower;
  for (std::size_t i = h.upper.size(); i-- > 0;) {
    const dgr::Point2& v = h.upper[i];
    if (v == poly.back() || v == poly.front()) continue;
    poly.push_back(v);
  }
  if (poly.size() == 1) return p == poly.front();
  double min_x = poly[0].x, max_x = poly[0].x, min_y = poly[0].y, max_y = poly[0].y;
  for (const auto& v : poly) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  if (p.x < min_x || p.x > max_x || p.y < min_y || p.y > max_y) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const dgr::Point2& a = poly[i];
    const dgr::Point2& b = poly[(i + 1) % poly.size()];
    if (dgr::uh_sign(a, p, b) < 0.0) return false;  // p strictly right of a->b
  }
  return true;
}

inline bool canonical_equal(const dgr::Hull& a, const dgr::Hull& b) {
  return dgr::canonicalize_hull(a) == dgr::canonicalize_hull(b);
}

}  // namespace test_support
