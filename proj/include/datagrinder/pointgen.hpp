#pragma once

// Deterministic 2D point clouds for hull benchmarks and experiments.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "datagrinder/geometry.hpp"
#include "datagrinder/random.hpp"

namespace dgr {

// Uniform on the unit square; x is drawn before y.
inline Point2 uniform_point(std::mt19937_64& gen) {
  const double x = unit_double(gen);
  const double y = unit_double(gen);
  return {x, y};
}

// Standard bivariate normal via Box-Muller from 53-bit uniforms; the first
// uniform is shifted into (0, 1] to avoid log(0).
inline Point2 gaussian_point(std::mt19937_64& gen) {
  const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = unit_double(gen);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * 3.14159265358979323846 * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

inline std::vector<Point2> uniform_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = uniform_point(gen);
  return pts;
}

inline std::vector<Point2> gaussian_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = gaussian_point(gen);
  return pts;
}

// name: "uniform" or "normal".
inline std::vector<Point2> named_points(const std::string& name, std::size_t n, std::uint64_t seed) {
  if (name == "uniform") return uniform_points(n, seed);
  if (name == "normal") return gaussian_points(n, seed);
  throw std::invalid_argument("unknown point distribution: " + name);
}

}  // namespace dgr
