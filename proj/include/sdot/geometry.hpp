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

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace sdot {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x1, s * a.x2}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x1 * b.x1 + a.x2 * b.x2; }
constexpr double cross(Point a, Point b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm(Point a) { return std::hypot(a.x1, a.x2); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// The closed half-plane {x : normal . x <= offset}.
struct HalfPlane {
  Point normal;
  double offset = 0.0;

  double evaluate(Point x) const { return dot(normal, x) - offset; }
  HalfPlane complement() const { return {-1.0 * normal, -offset}; }
};

/// Edge labels: non-negative values name the atom whose bisector supports the
/// edge, negative values name a boundary edge of the domain.
using EdgeLabel = int;
inline constexpr EdgeLabel kNoLabel = std::numeric_limits<int>::min();
constexpr EdgeLabel boundary_label(std::size_t k) { return -static_cast<int>(k) - 1; }
constexpr bool is_boundary_label(EdgeLabel l) { return l < 0 && l != kNoLabel; }

/// Counterclockwise convex polygon. Edge k runs from vertex k to vertex k+1 and
/// carries the label of the constraint line it lies on.
class ConvexPolygon {
public:
  ConvexPolygon() = default;

  /// Unchecked constructor; callers guarantee convexity and CCW order.
  ConvexPolygon(std::vector<Point> vertices, std::vector<EdgeLabel> labels);

  /// Validates convexity, drops duplicate and collinear vertices, orients the
  /// result counterclockwise and labels edge k as boundary_label(k).
  /// Throws std::invalid_argument for non-convex or zero-area input.
  static ConvexPolygon from_vertices(std::vector<Point> points);

  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.size() < 3; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<EdgeLabel>& labels() const noexcept { return labels_; }
  Point vertex(std::size_t k) const { return vertices_[k % vertices_.size()]; }
  EdgeLabel label(std::size_t k) const { return labels_[k % labels_.size()]; }

private:
  std::vector<Point> vertices_;
  std::vector<EdgeLabel> labels_;
};

/// Area, first and second moments of a polygon about an origin.
struct PolygonMoments {
  double area = 0.0;
  double m1 = 0.0;   // integral of (x1 - o1)
  double m2 = 0.0;   // integral of (x2 - o2)
  double m11 = 0.0;  // integral of (x1 - o1)^2
  double m22 = 0.0;  // integral of (x2 - o2)^2
};

/// Returns poly intersected with h. The edge created along the cut line gets
/// `label`. Points within 1e-12 * (scale + |offset|/|normal|) of the line count
/// as on it; consecutive vertices closer than 1e-10 * scale are merged. A
/// non-positive `length_scale` means diameter(poly). Results with fewer than
/// three vertices are returned empty.
ConvexPolygon clip(const ConvexPolygon& poly, const HalfPlane& h,
                   EdgeLabel label = kNoLabel, double length_scale = 0.0);

double area(const ConvexPolygon& poly);

/// (integral of x1, integral of x2) over the polygon.
Point first_moments(const ConvexPolygon& poly);

PolygonMoments moments(const ConvexPolygon& poly, Point origin = {});

double diameter(const ConvexPolygon& poly);

/// Signed distance test with an absolute tolerance.
bool contains(const ConvexPolygon& poly, Point x, double tol = 0.0);

/// Mirror image through the diagonal x1 = x2, re-oriented counterclockwise.
/// Boundary labels are renumbered; bisector labels are preserved.
ConvexPolygon swap_coordinates(const ConvexPolygon& poly);
inline Point swap_coordinates(Point p) { return {p.x2, p.x1}; }

/// Vertical extent [min x2, max x2].
std::pair<double, double> vertical_extent(const ConvexPolygon& poly);

}  // namespace sdot
