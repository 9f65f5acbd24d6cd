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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdot/geometry.hpp"

namespace sdot {

/// Full-length price vector, index-aligned with the atoms. Normalized vectors
/// have prices[0] == 0.
using PriceVector = Eigen::VectorXd;

/// Subtracts prices[0] from every entry.
void normalize(PriceVector& prices);

/// Target points y_i, each carrying mass |omega| / N.
struct Atoms {
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
  Point operator[](std::size_t i) const { return points[i]; }
};

struct AtomValidation {
  /// Minimum separation of ordering coordinates; non-positive means
  /// 1e-6 * diameter(omega).
  double gap_min = 0.0;
  /// Also require distinct first coordinates (needed by the reflected sweep).
  bool distinct_first = false;
};

double default_gap(const ConvexPolygon& omega);

/// Throws DegenerateAtoms naming the closest offending pair when two atoms
/// differ by less than gap_min in coordinate `axis` (1 or 2).
void require_coordinate_gap(const Atoms& atoms, int axis, double gap_min);

/// Validated atoms: inside omega (the boundary counts) and separated in the
/// second coordinate. Throws std::invalid_argument or DegenerateAtoms.
Atoms make_atoms(std::vector<Point> points, const ConvexPolygon& omega,
                 const AtomValidation& options = {});

/// The anisotropic cost weight diag(eps, 1).
struct Metric {
  double eps = 1.0;

  Point apply(Point v) const { return {eps * v.x1, v.x2}; }
  /// d/d(eps) of apply(v): diag(1, 0) v.
  static Point derivative(Point v) { return {v.x1, 0.0}; }
  double cost(Point x, Point y) const {
    const Point d = x - y;
    return dot(apply(d), d);
  }
};

/// Common boundary of cells i < j. tail -> head follows cell i's
/// counterclockwise boundary.
struct Facet {
  std::size_t i = 0;
  std::size_t j = 0;
  double length = 0.0;
  Point tail;
  Point head;
};

struct CellComplex {
  std::vector<ConvexPolygon> cells;
  std::vector<double> areas;
  std::vector<Facet> facets;
  double eps = 0.0;
  PriceVector prices;
  double omega_area = 0.0;
  double length_scale = 0.0;

  std::size_t size() const noexcept { return cells.size(); }
  double target_mass() const { return omega_area / static_cast<double>(cells.size()); }
};

/// Side of the (i, j) boundary belonging to cell i:
/// 2 A (y_j - y_i) . x <= A y_j . y_j - A y_i . y_i - p_j + p_i.
HalfPlane bisector(std::size_t i, std::size_t j, const Atoms& atoms, const Metric& metric,
                   const PriceVector& prices);

/// Cells built by clipping omega against every bisector. Cells are clipped in
/// parallel with OpenMP; facet assembly is sequential.
CellComplex build_cells(const Atoms& atoms, const Metric& metric, const PriceVector& prices,
                        const ConvexPolygon& omega);

/// Single-threaded reference for build_cells; results are identical.
CellComplex build_cells_serial(const Atoms& atoms, const Metric& metric,
                               const PriceVector& prices, const ConvexPolygon& omega);

/// Contacts not longer than this are treated as non-adjacent.
double facet_tolerance(double length_scale);

/// Every cell area lies strictly inside (m/2, 2m), m = |omega| / N.
bool in_admissible_set(const CellComplex& complex);

}  // namespace sdot
