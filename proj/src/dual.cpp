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

#include "sdot/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sdot/errors.hpp"

namespace sdot {

namespace {

double max_diagonal(const ReducedMatrix& m) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < m.dim(); ++i) d = std::max(d, std::abs(m.entries(i, i)));
  return d;
}

double row_excess(const ReducedMatrix& m, Eigen::Index i) {
  double off = 0.0;
  for (Eigen::Index j = 0; j < m.dim(); ++j) {
    if (j != i) off += std::abs(m.entries(i, j));
  }
  return m.entries(i, i) - off;
}

// Connected components of a graph given by an adjacency predicate.
template <typename Adjacent>
std::vector<int> components(Eigen::Index n, Adjacent adjacent) {
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int count = 0;
  std::vector<Eigen::Index> stack;
  for (Eigen::Index s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    comp[static_cast<std::size_t>(s)] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const Eigen::Index u = stack.back();
      stack.pop_back();
      for (Eigen::Index v = 0; v < n; ++v) {
        if (comp[static_cast<std::size_t>(v)] < 0 && adjacent(u, v)) {
          comp[static_cast<std::size_t>(v)] = count;
          stack.push_back(v);
        }
      }
    }
    ++count;
  }
  return comp;
}

}  // namespace

double phi(const CellComplex& complex, const Atoms& atoms) {
  const double m = complex.target_mass();
  const PriceVector& p = complex.prices;
  double value = 0.0;
  for (std::size_t i = 0; i < complex.size(); ++i) {
    const PolygonMoments mo = moments(complex.cells[i], atoms[i]);
    value += m * p[static_cast<Eigen::Index>(i)];
    value += complex.eps * mo.m11 + mo.m22 - p[static_cast<Eigen::Index>(i)] * mo.area;
  }
  return value;
}

double phi(const PriceVector& prices, const Metric& metric, const Atoms& atoms,
           const ConvexPolygon& omega) {
  return phi(build_cells(atoms, metric, prices, omega), atoms);
}

Eigen::VectorXd gradient(const CellComplex& complex) {
  const auto n = static_cast<Eigen::Index>(complex.size());
  Eigen::VectorXd g(n);
  const double m = complex.target_mass();
  for (Eigen::Index i = 0; i < n; ++i) g[i] = m - complex.areas[static_cast<std::size_t>(i)];
  return g;
}

Eigen::VectorXd reduced_gradient(const CellComplex& complex) {
  const Eigen::VectorXd g = gradient(complex);
  return g.tail(g.size() - 1);
}

double facet_weight(const Facet& facet, const Atoms& atoms, double eps) {
  const double denom = norm(Metric{eps}.apply(atoms[facet.j] - atoms[facet.i]));
  if (denom == 0.0) {
    throw SingularPartition("adjacent atoms coincide under the anisotropic metric");
  }
  return facet.length / (2.0 * denom);
}

Eigen::MatrixXd full_hessian(const CellComplex& complex, const Atoms& atoms) {
  const auto n = static_cast<Eigen::Index>(complex.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const Facet& f : complex.facets) {
    const double w = facet_weight(f, atoms, complex.eps);
    const auto i = static_cast<Eigen::Index>(f.i);
    const auto j = static_cast<Eigen::Index>(f.j);
    h(i, i) += w;
    h(j, j) += w;
    h(i, j) -= w;
    h(j, i) -= w;
  }
  return h;
}

ReducedMatrix hessian(const CellComplex& complex, const Atoms& atoms) {
  const Eigen::MatrixXd h = full_hessian(complex, atoms);
  const Eigen::Index r = h.rows() - 1;
  return {h.bottomRightCorner(r, r)};
}

Eigen::VectorXd area_eps_derivative(const CellComplex& complex, const Atoms& atoms) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(complex.size()));
  for (const Facet& f : complex.facets) {
    const Point yi = atoms[f.i];
    const Point yj = atoms[f.j];
    const Point numerator = Metric::derivative(yj - yi);
    const Point lever = yj + yi - f.tail - f.head;
    const double contribution = facet_weight(f, atoms, complex.eps) * dot(numerator, lever);
    d[static_cast<Eigen::Index>(f.i)] += contribution;
    d[static_cast<Eigen::Index>(f.j)] -= contribution;
  }
  return d;
}

Eigen::VectorXd mixed_derivative(const CellComplex& complex, const Atoms& atoms) {
  const Eigen::VectorXd d = area_eps_derivative(complex, atoms);
  return -d.tail(d.size() - 1);
}

double min_eigenvalue(const ReducedMatrix& m) {
  if (m.dim() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Point correlation_point(const CellComplex& complex, const Atoms& atoms) {
  Point z;
  for (std::size_t i = 0; i < complex.size(); ++i) {
    const Point fm = first_moments(complex.cells[i]);
    z.x1 += atoms[i].x1 * fm.x1;
    z.x2 += atoms[i].x2 * fm.x2;
  }
  return z;
}

bool rows_diagonally_dominant(const ReducedMatrix& m, double tol) {
  const double scale = tol * std::max(1.0, max_diagonal(m));
  for (Eigen::Index i = 0; i < m.dim(); ++i) {
    if (row_excess(m, i) < -scale) return false;
  }
  return true;
}

bool has_strictly_dominant_row(const ReducedMatrix& m, double tol) {
  const double scale = tol * std::max(1.0, max_diagonal(m));
  for (Eigen::Index i = 0; i < m.dim(); ++i) {
    if (row_excess(m, i) > scale) return true;
  }
  return false;
}

bool anchored_connectivity(const ReducedMatrix& m, double tol) {
  const double scale = tol * std::max(1.0, max_diagonal(m));
  const std::vector<int> comp = components(m.dim(), [&](Eigen::Index u, Eigen::Index v) {
    return u != v && std::abs(m.entries(u, v)) > scale;
  });
  int count = 0;
  for (int c : comp) count = std::max(count, c + 1);
  std::vector<bool> anchored(static_cast<std::size_t>(count), false);
  for (Eigen::Index i = 0; i < m.dim(); ++i) {
    if (row_excess(m, i) > scale) anchored[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])] = true;
  }
  for (bool a : anchored) {
    if (!a) return false;
  }
  return true;
}

bool adjacency_connected(const CellComplex& complex) {
  const auto n = static_cast<Eigen::Index>(complex.size());
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
  for (const Facet& f : complex.facets) {
    adj(static_cast<Eigen::Index>(f.i), static_cast<Eigen::Index>(f.j)) = 1;
    adj(static_cast<Eigen::Index>(f.j), static_cast<Eigen::Index>(f.i)) = 1;
  }
  const std::vector<int> comp =
      components(n, [&](Eigen::Index u, Eigen::Index v) { return adj(u, v) != 0; });
  for (int c : comp) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace sdot
