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

#include "sdot/cells.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sdot/errors.hpp"

namespace sdot {

namespace {

constexpr double kFacetTol = 1e-10;
constexpr double kInsideTol = 1e-10;
constexpr std::ptrdiff_t kParallelThreshold = 16;

ConvexPolygon build_cell(std::size_t i, const Atoms& atoms, const Metric& metric,
                         const PriceVector& prices, const ConvexPolygon& omega, double scale) {
  ConvexPolygon cell = omega;
  for (std::size_t j = 0; j < atoms.size() && !cell.empty(); ++j) {
    if (j == i) continue;
    cell = clip(cell, bisector(i, j, atoms, metric, prices), static_cast<EdgeLabel>(j), scale);
  }
  return cell;
}

struct Edge {
  Point tail;
  Point head;
  double length = 0.0;
};

// Longest edge of `cell` supported by the bisector towards `other`.
Edge find_edge(const ConvexPolygon& cell, std::size_t other) {
  Edge best;
  for (std::size_t k = 0; k < cell.size(); ++k) {
    if (cell.label(k) != static_cast<EdgeLabel>(other)) continue;
    const Point a = cell.vertex(k);
    const Point b = cell.vertex(k + 1);
    const double len = distance(a, b);
    if (len > best.length) best = {a, b, len};
  }
  return best;
}

CellComplex assemble(std::vector<ConvexPolygon> cells, const Metric& metric,
                     const PriceVector& prices, const ConvexPolygon& omega, double scale) {
  CellComplex complex;
  complex.eps = metric.eps;
  complex.prices = prices;
  complex.omega_area = area(omega);
  complex.length_scale = scale;
  complex.areas.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) complex.areas[i] = area(cells[i]);

  const double tol = facet_tolerance(scale);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const Edge from_i = find_edge(cells[i], j);
      if (from_i.length > tol) {
        complex.facets.push_back({i, j, from_i.length, from_i.tail, from_i.head});
        continue;
      }
      const Edge from_j = find_edge(cells[j], i);
      if (from_j.length > tol) {
        complex.facets.push_back({i, j, from_j.length, from_j.head, from_j.tail});
      }
    }
  }
  complex.cells = std::move(cells);
  return complex;
}

}  // namespace

void normalize(PriceVector& prices) {
  if (prices.size() > 0) prices.array() -= prices[0];
}

double default_gap(const ConvexPolygon& omega) { return 1e-6 * diameter(omega); }

void require_coordinate_gap(const Atoms& atoms, int axis, double gap_min) {
  const auto coord = [axis](Point p) { return axis == 1 ? p.x1 : p.x2; };
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return coord(atoms[a]) < coord(atoms[b]);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::size_t a = order[k - 1];
    const std::size_t b = order[k];
    const double gap = coord(atoms[b]) - coord(atoms[a]);
    if (gap < gap_min) {
      std::ostringstream msg;
      msg << "atoms " << std::min(a, b) + 1 << " and " << std::max(a, b) + 1
          << " have coordinate x" << axis << " closer than " << gap_min << " (gap " << gap
          << ")";
      throw DegenerateAtoms(std::min(a, b), std::max(a, b), msg.str());
    }
  }
}

Atoms make_atoms(std::vector<Point> points, const ConvexPolygon& omega,
                 const AtomValidation& options) {
  if (points.empty()) throw std::invalid_argument("at least one atom is required");
  const double diam = diameter(omega);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point p = points[i];
    if (!std::isfinite(p.x1) || !std::isfinite(p.x2) || !contains(omega, p, kInsideTol * diam)) {
      std::ostringstream msg;
      msg << "atom " << i + 1 << " (" << p.x1 << ", " << p.x2 << ") lies outside the domain";
      throw std::invalid_argument(msg.str());
    }
  }
  Atoms atoms{std::move(points)};
  const double gap = options.gap_min > 0.0 ? options.gap_min : default_gap(omega);
  require_coordinate_gap(atoms, 2, gap);
  if (options.distinct_first) require_coordinate_gap(atoms, 1, gap);
  return atoms;
}

HalfPlane bisector(std::size_t i, std::size_t j, const Atoms& atoms, const Metric& metric,
                   const PriceVector& prices) {
  const Point yi = atoms[i];
  const Point yj = atoms[j];
  const Point normal = 2.0 * metric.apply(yj - yi);
  const double offset = dot(metric.apply(yj), yj) - dot(metric.apply(yi), yi) - prices[j] +
                        prices[i];
  return {normal, offset};
}

double facet_tolerance(double length_scale) { return kFacetTol * length_scale; }

CellComplex build_cells(const Atoms& atoms, const Metric& metric, const PriceVector& prices,
                        const ConvexPolygon& omega) {
  const double scale = diameter(omega);
  const auto n = static_cast<std::ptrdiff_t>(atoms.size());
  std::vector<ConvexPolygon> cells(atoms.size());
#pragma omp parallel for schedule(dynamic) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cells[static_cast<std::size_t>(i)] =
        build_cell(static_cast<std::size_t>(i), atoms, metric, prices, omega, scale);
  }
  return assemble(std::move(cells), metric, prices, omega, scale);
}

CellComplex build_cells_serial(const Atoms& atoms, const Metric& metric,
                               const PriceVector& prices, const ConvexPolygon& omega) {
  const double scale = diameter(omega);
  std::vector<ConvexPolygon> cells(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    cells[i] = build_cell(i, atoms, metric, prices, omega, scale);
  }
  return assemble(std::move(cells), metric, prices, omega, scale);
}

bool in_admissible_set(const CellComplex& complex) {
  const double m = complex.target_mass();
  return std::all_of(complex.areas.begin(), complex.areas.end(),
                     [m](double a) { return a > 0.5 * m && a < 2.0 * m; });
}

}  // namespace sdot
