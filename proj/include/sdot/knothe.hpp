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

#include "sdot/cells.hpp"

namespace sdot {

/// Equal-area horizontal strips of omega, bottom to top. Strip k (0-based) is
/// assigned to atom order[k].
struct StripPartition {
  std::vector<double> heights;  // N - 1 interior boundaries
  std::vector<std::size_t> order;
};

/// Boundaries h_k with |omega cap {x2 <= h_k}| = k |omega| / N, by bisection.
std::vector<double> strip_heights(const ConvexPolygon& omega, std::size_t n);

/// Atom indices sorted by ascending second coordinate: strip k goes to order[k].
std::vector<std::size_t> knothe_assignment(const Atoms& atoms);

StripPartition strip_partition(const Atoms& atoms, const ConvexPolygon& omega);

/// Strip k of the partition as a polygon.
ConvexPolygon strip_polygon(const ConvexPolygon& omega, const StripPartition& strips,
                            std::size_t k);

/// Prices at eps = 0 making every horizontal strip a cell of area |omega|/N.
/// Consecutive strips are made indifferent at their shared boundary; the
/// result is normalized so prices[0] == 0. Throws DegenerateAtoms.
PriceVector initial_prices(const Atoms& atoms, const ConvexPolygon& omega);

/// Target covariance [[a, b], [b, c]] of the closed-form Gaussian example.
struct GaussianSpec {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;

  bool valid() const { return a > 0.0 && c > 0.0 && a * c - b * b > 0.0; }
  Eigen::Matrix2d covariance() const { return (Eigen::Matrix2d() << a, b, b, c).finished(); }
};

/// Optimal linear map from N(0, I) to N(0, spec) for the cost diag(eps, 1).
/// Throws std::invalid_argument for an invalid spec or negative eps.
Eigen::Matrix2d gaussian_transport(const GaussianSpec& spec, double eps);

/// eps -> 0 limit: [[sqrt(a - b^2/c), b/sqrt(c)], [0, sqrt(c)]]. The second output
/// coordinate depends on x2 only.
Eigen::Matrix2d gaussian_knothe_limit(const GaussianSpec& spec);

}  // namespace sdot
