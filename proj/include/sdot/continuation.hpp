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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sdot/cells.hpp"
#include "sdot/dual.hpp"

namespace sdot {

struct CgResult {
  Eigen::VectorXd solution;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool restarted = false;
};

/// Conjugate gradients for the SPD system M z = rhs. Runs up to dim(M)
/// iterations, then restarts once from a slightly jittered iterate with a
/// freshly computed residual, and gives up after 3 * dim(M) iterations in
/// total. Target: |M z - rhs| <= 1e-12 |rhs|. Throws LinearSolveFailure.
CgResult cg_solve(const ReducedMatrix& m, const Eigen::VectorXd& rhs);

/// dp/d(eps) at a built complex: zero for atom 1, M^{-1} (d/d(eps) grad Phi)
/// for the rest.
PriceVector price_velocity(const CellComplex& complex, const Atoms& atoms);

struct EulerState {
  PriceVector prices;
  double eps = 0.0;
};

/// One explicit Euler step p + h z of the price ODE. Throws
/// ExitedAdmissibleSet if (prices, eps) is outside the area band, and
/// LinearSolveFailure from the CG solve.
EulerState euler_step(const EulerState& state, double h, const Atoms& atoms,
                      const ConvexPolygon& omega);

enum class ScheduleKind { standard, full_sweep };

struct Schedule {
  ScheduleKind kind = ScheduleKind::standard;
  std::size_t steps = 500;
};

/// direct: cost weights (eps, 1). reflected: coordinates swapped, so the
/// frame-local eps weights the original second coordinate and the original
/// weight ratio is 1 / eps.
enum class Frame { direct, reflected };

struct Sample {
  std::size_t step = 0;
  Frame frame = Frame::direct;
  double eps = 0.0;
  /// First-coordinate weight over second-coordinate weight in the original frame.
  double weight_ratio = 0.0;
  PriceVector prices;
  std::vector<double> areas;
  Point correlation;
  double min_eig = 0.0;
};

enum class RunStatus { completed, exited_admissible_set, linear_solve_failure };

struct Trajectory {
  std::vector<Sample> samples;
  RunStatus status = RunStatus::completed;
  std::size_t failure_step = 0;
  std::string message;
};

struct RunOptions {
  /// Re-solve exactly every k steps (0 disables).
  std::size_t project_every = 0;
};

/// Integrates from the Knothe strips at eps = 0 to eps = 1 with h = 1/steps.
/// full_sweep continues in the reflected frame from eps = 1 back to 0, so the
/// weight ratio covers (0, inf]. Guard failures end the run early and are
/// reported in the returned trajectory. Throws DegenerateAtoms (full_sweep
/// needs distinct first coordinates) and std::invalid_argument for steps == 0.
Trajectory run(const Atoms& atoms, const ConvexPolygon& omega, const Schedule& schedule,
               const RunOptions& options = {});

Atoms swap_coordinates(const Atoms& atoms);

const char* to_string(Frame frame);
const char* to_string(RunStatus status);

}  // namespace sdot
