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

#include "sdot/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sdot {

namespace {

constexpr double kOnLineTol = 1e-12;
constexpr double kMergeTol = 1e-10;

enum class Side { inside, on, outside };

struct LabeledVertex {
  Point p;
  EdgeLabel label;
};

// Drops consecutive vertices closer than tol; the merged vertex keeps the
// outgoing label of the later one.
std::vector<LabeledVertex> merge_close(const std::vector<LabeledVertex>& in, double tol) {
  std::vector<LabeledVertex> out;
  out.reserve(in.size());
  for (const auto& v : in) {
    if (!out.empty() && distance(out.back().p, v.p) <= tol) {
      out.back().label = v.label;
      continue;
    }
    out.push_back(v);
  }
  while (out.size() > 1 && distance(out.back().p, out.front().p) <= tol) {
    out.pop_back();
  }
  return out;
}

ConvexPolygon to_polygon(const std::vector<LabeledVertex>& lv) {
  if (lv.size() < 3) return {};
  std::vector<Point> pts;
  std::vector<EdgeLabel> labels;
  pts.reserve(lv.size());
  labels.reserve(lv.size());
  for (const auto& v : lv) {
    pts.push_back(v.p);
    labels.push_back(v.label);
  }
  return {std::move(pts), std::move(labels)};
}

double diameter_of(const std::vector<Point>& pts) {
  double d = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) d = std::max(d, distance(pts[a], pts[b]));
  }
  return d;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices, std::vector<EdgeLabel> labels)
    : vertices_(std::move(vertices)), labels_(std::move(labels)) {
  assert(vertices_.size() == labels_.size());
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point> points) {
  for (const auto& p : points) {
    if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) {
      throw std::invalid_argument("polygon vertex has a non-finite coordinate");
    }
  }
  const double diam = diameter_of(points);
  if (points.size() < 3 || diam <= 0.0) {
    throw std::invalid_argument("polygon needs at least three distinct vertices");
  }

  std::vector<Point> pts;
  for (const auto& p : points) {
    if (pts.empty() || distance(pts.back(), p) > kOnLineTol * diam) pts.push_back(p);
  }
  while (pts.size() > 1 && distance(pts.back(), pts.front()) <= kOnLineTol * diam) pts.pop_back();

  double twice_area = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    twice_area += cross(pts[k], pts[(k + 1) % pts.size()]);
  }
  if (twice_area < 0.0) std::reverse(pts.begin(), pts.end());

  // Remove collinear vertices until every turn is strictly left or one is right.
  const double turn_tol = kOnLineTol * diam * diam;
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Point prev = pts[(k + pts.size() - 1) % pts.size()];
      const Point next = pts[(k + 1) % pts.size()];
      if (std::abs(cross(pts[k] - prev, next - pts[k])) <= turn_tol) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }
  if (pts.size() < 3) throw std::invalid_argument("polygon is degenerate (zero area)");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point prev = pts[(k + pts.size() - 1) % pts.size()];
    const Point next = pts[(k + 1) % pts.size()];
    if (cross(pts[k] - prev, next - pts[k]) < 0.0) {
      throw std::invalid_argument("polygon is not convex");
    }
  }

  std::vector<EdgeLabel> labels(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) labels[k] = boundary_label(k);
  return {std::move(pts), std::move(labels)};
}

ConvexPolygon clip(const ConvexPolygon& poly, const HalfPlane& h, EdgeLabel label,
                   double length_scale) {
  if (poly.empty()) return {};
  const double scale = length_scale > 0.0 ? length_scale : diameter(poly);
  const double nn = norm(h.normal);
  if (nn == 0.0) return h.offset >= 0.0 ? poly : ConvexPolygon{};

  const double tol = kOnLineTol * (scale + std::abs(h.offset) / nn);
  const std::size_t n = poly.size();
  std::vector<double> dist(n);
  std::vector<Side> side(n);
  bool any_out = false;
  bool any_in = false;
  for (std::size_t k = 0; k < n; ++k) {
    dist[k] = h.evaluate(poly.vertex(k)) / nn;
    if (dist[k] > tol) {
      side[k] = Side::outside;
      any_out = true;
    } else if (dist[k] < -tol) {
      side[k] = Side::inside;
      any_in = true;
    } else {
      side[k] = Side::on;
    }
  }
  if (!any_out) return poly;
  if (!any_in) return {};

  std::vector<LabeledVertex> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    const Point a = poly.vertex(k);
    const Point b = poly.vertex(next);
    const Side sa = side[k];
    const Side sb = side[next];
    const auto crossing = [&] {
      const double t = dist[k] / (dist[k] - dist[next]);
      return a + t * (b - a);
    };
    if (sa != Side::outside) {
      if (sb != Side::outside) {
        out.push_back({a, poly.label(k)});
      } else if (sa == Side::on) {
        out.push_back({a, label});
      } else {
        out.push_back({a, poly.label(k)});
        out.push_back({crossing(), label});
      }
    } else if (sb == Side::inside) {
      out.push_back({crossing(), poly.label(k)});
    }
  }
  return to_polygon(merge_close(out, kMergeTol * scale));
}

PolygonMoments moments(const ConvexPolygon& poly, Point origin) {
  PolygonMoments m;
  if (poly.empty()) return m;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = poly.vertex(k) - origin;
    const Point b = poly.vertex(k + 1) - origin;
    const double c = cross(a, b);
    m.area += c;
    m.m1 += (a.x1 + b.x1) * c;
    m.m2 += (a.x2 + b.x2) * c;
    m.m11 += (a.x1 * a.x1 + a.x1 * b.x1 + b.x1 * b.x1) * c;
    m.m22 += (a.x2 * a.x2 + a.x2 * b.x2 + b.x2 * b.x2) * c;
  }
  m.area /= 2.0;
  m.m1 /= 6.0;
  m.m2 /= 6.0;
  m.m11 /= 12.0;
  m.m22 /= 12.0;
  return m;
}

double area(const ConvexPolygon& poly) {
  if (poly.empty()) return 0.0;
  double twice = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) twice += cross(poly.vertex(k), poly.vertex(k + 1));
  return std::max(0.0, 0.5 * twice);
}

Point first_moments(const ConvexPolygon& poly) {
  const PolygonMoments m = moments(poly);
  return {m.m1, m.m2};
}

double diameter(const ConvexPolygon& poly) { return diameter_of(poly.vertices()); }

bool contains(const ConvexPolygon& poly, Point x, double tol) {
  if (poly.empty()) return false;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point a = poly.vertex(k);
    const Point e = poly.vertex(k + 1) - a;
    if (cross(e, x - a) / norm(e) < -tol) return false;
  }
  return true;
}

ConvexPolygon swap_coordinates(const ConvexPolygon& poly) {
  if (poly.empty()) return {};
  const std::size_t n = poly.size();
  std::vector<Point> pts(n);
  std::vector<EdgeLabel> labels(n);
  // Reversing the order of mirrored vertices restores counterclockwise
  // orientation; new edge m is old edge n-2-m traversed backwards.
  for (std::size_t m = 0; m < n; ++m) {
    pts[m] = swap_coordinates(poly.vertex(n - 1 - m));
    const EdgeLabel old = poly.label((2 * n - 2 - m) % n);
    labels[m] = is_boundary_label(old) ? boundary_label(m) : old;
  }
  return {std::move(pts), std::move(labels)};
}

std::pair<double, double> vertical_extent(const ConvexPolygon& poly) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : poly.vertices()) {
    lo = std::min(lo, v.x2);
    hi = std::max(hi, v.x2);
  }
  return {lo, hi};
}

}  // namespace sdot
