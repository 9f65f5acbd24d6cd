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

#include <Eigen/Dense>

#include "sdot/cells.hpp"

namespace sdot {

/// M = -(D^2_pp Phi) restricted to atoms 2..N (0-based indices 1..N-1).
struct ReducedMatrix {
  Eigen::MatrixXd entries;

  Eigen::Index dim() const { return entries.rows(); }
};

/// Dual objective m * sum(p) + integral over omega of min_i (c_eps(x, y_i) - p_i),
/// with m = |omega| / N. Integrated exactly from polygon moments.
double phi(const CellComplex& complex, const Atoms& atoms);
double phi(const PriceVector& prices, const Metric& metric, const Atoms& atoms,
           const ConvexPolygon& omega);

/// Full-length gradient, component i = m - |C_i|.
Eigen::VectorXd gradient(const CellComplex& complex);

/// Components 2..N of gradient().
Eigen::VectorXd reduced_gradient(const CellComplex& complex);

/// Weight l_ij / (2 |A (y_j - y_i)|) of a facet.
double facet_weight(const Facet& facet, const Atoms& atoms, double eps);

/// -D^2_pp Phi over all N atoms (a weighted graph Laplacian).
Eigen::MatrixXd full_hessian(const CellComplex& complex, const Atoms& atoms);

/// Reduced matrix M. Facets against atom 1 only add to the diagonal.
/// Throws SingularPartition if two adjacent atoms coincide under the metric.
ReducedMatrix hessian(const CellComplex& complex, const Atoms& atoms);

/// d|C_i|/d(eps) for all N cells; entries sum to zero.
Eigen::VectorXd area_eps_derivative(const CellComplex& complex, const Atoms& atoms);

/// d/d(eps) of the reduced gradient: component i is -d|C_i|/d(eps), i >= 2.
Eigen::VectorXd mixed_derivative(const CellComplex& complex, const Atoms& atoms);

/// Smallest eigenvalue of M (+infinity for an empty matrix).
double min_eigenvalue(const ReducedMatrix& m);

/// (sum_i y_i1 * integral_{C_i} x1, sum_i y_i2 * integral_{C_i} x2).
Point correlation_point(const CellComplex& complex, const Atoms& atoms);

/// Structural checks on M used by the property suites.
bool rows_diagonally_dominant(const ReducedMatrix& m, double tol = 1e-12);
bool has_strictly_dominant_row(const ReducedMatrix& m, double tol = 1e-12);

/// Every connected component of the off-diagonal graph of M contains a
/// strictly dominant row, i.e. is linked to the dropped atom.
bool anchored_connectivity(const ReducedMatrix& m, double tol = 1e-12);

/// The facet graph over all N cells is connected.
bool adjacency_connected(const CellComplex& complex);

}  // namespace sdot
