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

#include "sdot/knothe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sdot {

namespace {

double area_below(const ConvexPolygon& omega, double h, double scale) {
  return area(clip(omega, HalfPlane{{0.0, 1.0}, h}, kNoLabel, scale));
}

}  // namespace

std::vector<double> strip_heights(const ConvexPolygon& omega, std::size_t n) {
  std::vector<double> heights;
  if (n <= 1) return heights;
  const double total = area(omega);
  const double scale = diameter(omega);
  const auto [bottom, top] = vertical_extent(omega);
  heights.reserve(n - 1);
  double lo = bottom;
  for (std::size_t k = 1; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n);
    double a = lo;
    double b = top;
    double mid = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (a + b);
      const double below = area_below(omega, mid, scale);
      if (below == target) break;
      if (below < target) {
        a = mid;
      } else {
        b = mid;
      }
      if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
        break;
      }
    }
    heights.push_back(mid);
    lo = mid;
  }
  return heights;
}

std::vector<std::size_t> knothe_assignment(const Atoms& atoms) {
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return atoms[a].x2 < atoms[b].x2; });
  return order;
}

StripPartition strip_partition(const Atoms& atoms, const ConvexPolygon& omega) {
  return {strip_heights(omega, atoms.size()), knothe_assignment(atoms)};
}

ConvexPolygon strip_polygon(const ConvexPolygon& omega, const StripPartition& strips,
                            std::size_t k) {
  const double scale = diameter(omega);
  ConvexPolygon strip = omega;
  if (k > 0) strip = clip(strip, HalfPlane{{0.0, -1.0}, -strips.heights[k - 1]}, kNoLabel, scale);
  if (k < strips.heights.size()) {
    strip = clip(strip, HalfPlane{{0.0, 1.0}, strips.heights[k]}, kNoLabel, scale);
  }
  return strip;
}

PriceVector initial_prices(const Atoms& atoms, const ConvexPolygon& omega) {
  require_coordinate_gap(atoms, 2, default_gap(omega));
  const StripPartition strips = strip_partition(atoms, omega);
  PriceVector p = PriceVector::Zero(static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t k = 0; k + 1 < strips.order.size(); ++k) {
    const double h = strips.heights[k];
    const std::size_t below = strips.order[k];
    const std::size_t above = strips.order[k + 1];
    const double db = h - atoms[below].x2;
    const double da = h - atoms[above].x2;
    p[static_cast<Eigen::Index>(above)] = p[static_cast<Eigen::Index>(below)] + da * da - db * db;
  }
  normalize(p);
  return p;
}

Eigen::Matrix2d gaussian_transport(const GaussianSpec& spec, double eps) {
  if (!spec.valid()) throw std::invalid_argument("Gaussian covariance is not positive definite");
  if (eps < 0.0) throw std::invalid_argument("eps must be non-negative");
  const double s = std::sqrt(spec.a * spec.c - spec.b * spec.b);
  const double scale = 1.0 / std::sqrt(spec.a * eps * eps + spec.c + 2.0 * eps * s);
  Eigen::Matrix2d t;
  t << spec.a * eps + s, spec.b, spec.b * eps, spec.c + eps * s;
  return scale * t;
}

Eigen::Matrix2d gaussian_knothe_limit(const GaussianSpec& spec) {
  if (!spec.valid()) throw std::invalid_argument("Gaussian covariance is not positive definite");
  Eigen::Matrix2d t;
  t << std::sqrt(spec.a - spec.b * spec.b / spec.c), spec.b / std::sqrt(spec.c), 0.0,
      std::sqrt(spec.c);
  return t;
}

}  // namespace sdot
