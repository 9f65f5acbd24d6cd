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

#include <vector>

#include "sdot/cells.hpp"

namespace sdot {

struct SolveOptions {
  /// Sup-norm target on m - |C_i|; non-positive means 1e-10 * |omega|.
  double tol = 0.0;
  int max_iter = 1000;
};

struct SolveReport {
  PriceVector prices;
  int iterations = 0;
  double grad_norm = 0.0;
  std::vector<double> areas;
  /// Objective value after each accepted iterate, starting with p_init.
  std::vector<double> objective;
};

/// Maximizes the concave dual at fixed eps by damped Newton ascent. The
/// Hessian M is the search metric; steps are halved until the Armijo condition
/// (c = 1e-4) or a sufficient gradient decrease holds and no cell shrinks below
/// half of min(smallest current area, |omega|/N). prices[0] stays 0.
/// Throws NoConvergence after max_iter iterations or when the step underflows.
SolveReport solve_fixed_eps(const Atoms& atoms, const ConvexPolygon& omega, double eps,
                            const PriceVector& p_init, const SolveOptions& options = {});

/// sum_i |C_i sym-diff S_i| / |omega| with S_i the horizontal strip of atom i.
double strip_deviation(const CellComplex& complex, const Atoms& atoms,
                       const ConvexPolygon& omega);

struct StripDeviation {
  double eps = 0.0;
  double deviation = 0.0;
};

/// Solves at each eps (eps = 0 uses the strip prices directly) and reports the
/// deviation of the optimal cells from the Knothe strips.
std::vector<StripDeviation> knothe_limit_check(const Atoms& atoms, const ConvexPolygon& omega,
                                               const std::vector<double>& eps_list,
                                               const SolveOptions& options = {});

}  // namespace sdot
