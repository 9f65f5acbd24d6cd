//
//  sdot: Knothe-to-Brenier continuation for semi-discrete optimal transport
//
//  Copyright 2026 The sdot Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//

#pragma once

// Fixtures and independent Monte-Carlo oracles shared by the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "sdot/cells.hpp"
#include "sdot/geometry.hpp"

namespace sdot::test {

/// Seed of the five-atom unit-square fixture shared by the CLI and acceptance
/// suites (atoms drawn by io::generate_atoms).
inline constexpr std::uint64_t kFixtureSeed = 1;

inline ConvexPolygon unit_square() {
  return ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline ConvexPolygon unit_triangle() {
  return ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {0, 1}});
}

/// Unit-area regular hexagon centred at (0.5, 0.5), rotated so no edge is
/// horizontal.
inline ConvexPolygon unit_hexagon() {
  const double r = std::sqrt(2.0 / (3.0 * std::sqrt(3.0)));
  std::vector<Point> pts;
  for (int k = 0; k < 6; ++k) {
    const double t = 0.2 + k * std::numbers::pi / 3.0;
    pts.push_back({0.5 + r * std::cos(t), 0.5 + r * std::sin(t)});
  }
  return ConvexPolygon::from_vertices(pts);
}

/// Convex polygon with vertices on an ellipse at random angles.
inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int vertices = 7) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  const double a = u(rng);
  const double b = u(rng);
  const Point c{u(rng), u(rng)};
  std::vector<double> t(static_cast<std::size_t>(vertices));
  for (auto& x : t) x = angle(rng);
  std::sort(t.begin(), t.end());
  std::vector<Point> pts;
  for (double x : t) pts.push_back({c.x1 + a * std::cos(x), c.x2 + b * std::sin(x)});
  return ConvexPolygon::from_vertices(pts);
}

/// Uniform atoms in omega, rejecting clashes in the second (and optionally
/// first) coordinate closer than min_gap.
inline Atoms random_atoms(std::mt19937_64& rng, const ConvexPolygon& omega, std::size_t n,
                          double min_gap = 1e-3, bool distinct_first = false) {
  double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
  for (const auto& v : omega.vertices()) {
    lo1 = std::min(lo1, v.x1);
    hi1 = std::max(hi1, v.x1);
    lo2 = std::min(lo2, v.x2);
    hi2 = std::max(hi2, v.x2);
  }
  std::uniform_real_distribution<double> u1(lo1, hi1);
  std::uniform_real_distribution<double> u2(lo2, hi2);
  std::vector<Point> pts;
  while (pts.size() < n) {
    const Point p{u1(rng), u2(rng)};
    if (!contains(omega, p, -1e-3)) continue;
    bool clash = false;
    for (const auto& q : pts) {
      if (std::abs(q.x2 - p.x2) < min_gap) clash = true;
      if (distinct_first && std::abs(q.x1 - p.x1) < min_gap) clash = true;
    }
    if (!clash) pts.push_back(p);
  }
  return make_atoms(std::move(pts), omega);
}

/// Two atoms stacked vertically in the unit square.
inline Atoms symmetric_atoms() { return Atoms{{{0.5, 0.25}, {0.5, 0.75}}}; }

/// Mean and standard error of a Monte-Carlo estimate.
struct Estimate {
  double mean = 0.0;
  double sigma = 0.0;
};

/// Monte-Carlo estimate of the integral of f over a box [lo, hi].
template <typename F>
Estimate mc_integrate(F f, Point lo, Point hi, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u1(lo.x1, hi.x1);
  std::uniform_real_distribution<double> u2(lo.x2, hi.x2);
  const double box = (hi.x1 - lo.x1) * (hi.x2 - lo.x2);
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double v = f(Point{u1(rng), u2(rng)});
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return {box * mean, box * std::sqrt(var / n)};
}

inline std::pair<Point, Point> bounding_box(const ConvexPolygon& poly) {
  Point lo{1e300, 1e300};
  Point hi{-1e300, -1e300};
  for (const auto& v : poly.vertices()) {
    lo = {std::min(lo.x1, v.x1), std::min(lo.x2, v.x2)};
    hi = {std::max(hi.x1, v.x1), std::max(hi.x2, v.x2)};
  }
  return {lo, hi};
}

/// Brute-force owner of x: argmin_i c_eps(x, y_i) - p_i.
inline std::size_t nearest_atom(Point x, const Atoms& atoms, double eps, const PriceVector& p) {
  std::size_t best = 0;
  double best_cost = 1e300;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double c = eps * (x.x1 - atoms[i].x1) * (x.x1 - atoms[i].x1) +
                     (x.x2 - atoms[i].x2) * (x.x2 - atoms[i].x2) - p[static_cast<Eigen::Index>(i)];
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  return best;
}

/// Gaussian elimination with partial pivoting, for checking iterative solvers.
inline Eigen::VectorXd eliminate(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    for (Eigen::Index r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    }
    a.row(k).swap(a.row(piv));
    std::swap(b[k], b[piv]);
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      a.row(r) -= f * a.row(k);
      b[r] -= f * b[k];
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    double s = b[k];
    for (Eigen::Index c = k + 1; c < n; ++c) s -= a(k, c) * x[c];
    x[k] = s / a(k, k);
  }
  return x;
}

}  // namespace sdot::test
