#pragma once

// Divide-and-conquer hull: split the input round-robin, hull each part
// (in parallel when asked to), then hull the union of the partial hull
// vertices. Correct because the hull of P equals the hull of the union of
// the partition hulls.

#include <cstddef>
#include <future>
#include <stdexcept>
#include <utility>
#include <vector>

#include "datagrinder/geometry.hpp"

namespace dgr {

// Deal points to k partitions by index (i -> i mod k). Order within a
// partition follows input order; no partition is empty when |P| >= k.
inline std::vector<std::vector<Point2>> partition_points(const std::vector<Point2>& pts, std::size_t k) {
  if (k == 0) throw std::invalid_argument("partition_points: k must be positive");
  if (k > pts.size()) throw std::invalid_argument("partition_points: more partitions than points");
  std::vector<std::vector<Point2>> parts(k);
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i].reserve(pts.size() / k + 1);
  for (std::size_t i = 0; i < pts.size(); ++i) parts[i % k].push_back(pts[i]);
  return parts;
}

namespace detail {

struct PartialHull {
  std::vector<Point2> survivors;  // hull vertices, or all points when degenerate
  std::uint64_t reads = 0;
};

inline PartialHull hull_partition(const std::vector<Point2>& part) {
  ReadCounter rc;
  PartialHull out;
  try {
    const Hull h = candidate_elimination_convex_hull(part, &rc);
    out.survivors = h.upper;
    out.survivors.insert(out.survivors.end(), h.lower.begin(), h.lower.end());
  } catch (const DegenerateHull&) {
    // A collinear or tiny partition cannot vote vertices away; keep all
    // of its points for the merge step.
    out.survivors = part;
  }
  out.reads = rc.reads;
  return out;
}

}  // namespace detail

// Hull of P via k round-robin partitions. Partition hulls run as parallel
// tasks when `parallel` is set; per-partition read counts join the shared
// counter only after all tasks finish, so totals are deterministic.
// Throws DegenerateHull when the full input is degenerate.
inline Hull divide_conquer_hull(const std::vector<Point2>& pts, std::size_t k,
                                ReadCounter* rc = nullptr, bool parallel = true) {
  if (pts.empty()) throw std::invalid_argument("divide_conquer_hull: empty input");
  const auto parts = partition_points(pts, k);

  std::vector<detail::PartialHull> partials(parts.size());
  if (parallel && parts.size() > 1) {
    std::vector<std::future<detail::PartialHull>> tasks;
    tasks.reserve(parts.size());
    for (const auto& part : parts)
      tasks.push_back(std::async(std::launch::async, detail::hull_partition, std::cref(part)));
    for (std::size_t i = 0; i < tasks.size(); ++i) partials[i] = tasks[i].get();
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) partials[i] = detail::hull_partition(parts[i]);
  }

  std::vector<Point2> merged;
  for (const auto& ph : partials) {
    charge(rc, ph.reads);
    merged.insert(merged.end(), ph.survivors.begin(), ph.survivors.end());
  }
  return candidate_elimination_convex_hull(merged, rc);
}

}  // namespace dgr
