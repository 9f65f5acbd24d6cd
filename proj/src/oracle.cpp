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

#include "sdot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sdot/dual.hpp"
#include "sdot/errors.hpp"
#include "sdot/knothe.hpp"

namespace sdot {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kBacktrack = 0.5;
constexpr double kMinStep = 1e-12;

double min_area(const CellComplex& c) {
  return *std::min_element(c.areas.begin(), c.areas.end());
}

// Newton direction M d = g, falling back to a shifted system when M is singular
// (empty cells) or the direction fails to ascend.
Eigen::VectorXd ascent_direction(const ReducedMatrix& m, const Eigen::VectorXd& g) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(m.entries);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    Eigen::VectorXd d = ldlt.solve(g);
    if (d.allFinite() && d.dot(g) > 0.0) return d;
  }
  const double shift =
      1e-8 * std::max(1.0, m.entries.diagonal().cwiseAbs().maxCoeff());
  Eigen::MatrixXd shifted = m.entries;
  shifted.diagonal().array() += shift;
  Eigen::VectorXd d = shifted.ldlt().solve(g);
  if (!d.allFinite() || d.dot(g) <= 0.0) d = g;
  return d;
}

}  // namespace

SolveReport solve_fixed_eps(const Atoms& atoms, const ConvexPolygon& omega, double eps,
                            const PriceVector& p_init, const SolveOptions& options) {
  const Metric metric{eps};
  const double total = area(omega);
  const double tol = options.tol > 0.0 ? options.tol : 1e-10 * total;

  SolveReport report;
  PriceVector p = p_init;
  normalize(p);
  CellComplex complex = build_cells(atoms, metric, p, omega);
  double value = phi(complex, atoms);
  report.objective.push_back(value);

  for (int it = 0;; ++it) {
    const Eigen::VectorXd g_full = gradient(complex);
    const double gnorm = g_full.cwiseAbs().maxCoeff();
    if (gnorm <= tol) {
      report.prices = p;
      report.iterations = it;
      report.grad_norm = gnorm;
      report.areas = complex.areas;
      return report;
    }
    if (it >= options.max_iter) {
      std::ostringstream msg;
      msg << "fixed-eps solve did not converge in " << options.max_iter
          << " iterations (gradient " << gnorm << ", eps " << eps << ")";
      throw NoConvergence(msg.str());
    }

    const Eigen::VectorXd g = g_full.tail(g_full.size() - 1);
    const Eigen::VectorXd d = ascent_direction(hessian(complex, atoms), g);
    const double slope = g.dot(d);
    const double floor = 0.5 * std::min(min_area(complex), complex.target_mass());
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value));

    double step = 1.0;
    while (true) {
      PriceVector trial = p;
      trial.tail(trial.size() - 1) += step * d;
      CellComplex next = build_cells(atoms, metric, trial, omega);
      const double next_value = phi(next, atoms);
      const double next_gnorm = gradient(next).cwiseAbs().maxCoeff();
      const bool areas_ok = min_area(next) > 0.0 && min_area(next) >= floor;
      const bool armijo = next_value >= value + kArmijo * step * slope;
      const bool gradient_drop =
          next_gnorm <= (1.0 - 0.5 * step) * gnorm && next_value >= value - roundoff;
      if (areas_ok && (armijo || gradient_drop)) {
        p = std::move(trial);
        complex = std::move(next);
        value = next_value;
        report.objective.push_back(value);
        break;
      }
      step *= kBacktrack;
      if (step < kMinStep) {
        std::ostringstream msg;
        msg << "line search stalled at gradient " << gnorm << " (eps " << eps << ")";
        throw NoConvergence(msg.str());
      }
    }
  }
}

double strip_deviation(const CellComplex& complex, const Atoms& atoms,
                       const ConvexPolygon& omega) {
  const StripPartition strips = strip_partition(atoms, omega);
  const double scale = diameter(omega);
  double dev = 0.0;
  for (std::size_t k = 0; k < strips.order.size(); ++k) {
    const std::size_t i = strips.order[k];
    ConvexPolygon common = complex.cells[i];
    if (k > 0) {
      common = clip(common, HalfPlane{{0.0, -1.0}, -strips.heights[k - 1]}, kNoLabel, scale);
    }
    if (k < strips.heights.size()) {
      common = clip(common, HalfPlane{{0.0, 1.0}, strips.heights[k]}, kNoLabel, scale);
    }
    const double strip_area = area(strip_polygon(omega, strips, k));
    dev += complex.areas[i] + strip_area - 2.0 * area(common);
  }
  return dev / area(omega);
}

std::vector<StripDeviation> knothe_limit_check(const Atoms& atoms, const ConvexPolygon& omega,
                                               const std::vector<double>& eps_list,
                                               const SolveOptions& options) {
  const PriceVector p0 = initial_prices(atoms, omega);
  std::vector<StripDeviation> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    PriceVector p = p0;
    if (eps > 0.0) p = solve_fixed_eps(atoms, omega, eps, p0, options).prices;
    const CellComplex complex = build_cells(atoms, Metric{eps}, p, omega);
    out.push_back({eps, strip_deviation(complex, atoms, omega)});
  }
  return out;
}

}  // namespace sdot
