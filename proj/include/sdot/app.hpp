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

#include <filesystem>
#include <vector>

#include "sdot/io.hpp"

namespace sdot::app {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kExitedAdmissibleSet = 3,
  kLinearSolveFailure = 4,
  kNoConvergence = 5,
};

/// Continuation run: trajectory.csv, errors.csv, correlation.csv,
/// snapshots/*.svg and report.json under out_dir.
int cmd_continue(const io::ProblemConfig& config, const std::filesystem::path& out_dir);

/// Fixed-eps oracle solve at config.eps with the same outputs for one sample.
int cmd_exact(const io::ProblemConfig& config, const std::filesystem::path& out_dir);

/// Exact and continuation correlation curves on an eps grid, plus the
/// concavity check of the exact curve.
int cmd_correlation(const io::ProblemConfig& config, const std::filesystem::path& out_dir);

/// Oracle correlation points z(eps) at eps_k = k / (grid - 1).
std::vector<io::CorrelationRow> exact_correlation_curve(const Atoms& atoms,
                                                        const ConvexPolygon& omega,
                                                        std::size_t grid);

struct CurveCheck {
  bool concave_decreasing = false;
  /// Secant slopes dz2/dz1 between consecutive points.
  std::vector<double> slopes;
  /// max_k |slope_k + eps_mid_k|.
  double max_slope_deviation = 0.0;
};

/// Slopes must be <= tol and non-increasing up to tol. Segments where the
/// curve does not move are skipped.
CurveCheck check_correlation_curve(const std::vector<io::CorrelationRow>& curve,
                                   double tol = 1e-6);

/// Cells of a trajectory sample in the original frame.
std::vector<ConvexPolygon> sample_cells(const Sample& sample, const Atoms& atoms,
                                        const ConvexPolygon& omega);

/// Entry point of the sdot executable.
int run_cli(int argc, const char* const* argv);

}  // namespace sdot::app
