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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "sdot/cells.hpp"
#include "sdot/continuation.hpp"

namespace sdot::io {

/// Invalid or unusable problem description.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ProblemConfig {
  ConvexPolygon omega = ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::vector<Point> atoms;  // empty: generate n_atoms from seed
  std::size_t n_atoms = 5;
  std::uint64_t seed = 1;
  Schedule schedule;
  std::size_t project_every = 0;
  std::size_t snapshots = 5;
  double eps = 1.0;
  std::size_t grid = 21;
  double gap_min = 0.0;
};

/// Keys (all optional): omega [[x1,x2],...], atoms [[x1,x2],...], n_atoms,
/// seed, schedule {kind, steps}, project_every, snapshots, eps, grid, gap_min.
ProblemConfig parse_config(const nlohmann::json& j);
ProblemConfig load_config(const std::filesystem::path& path);

/// Uniform atoms in omega by rejection, redrawn until the coordinate-gap
/// invariants hold. Deterministic for a given seed.
std::vector<Point> generate_atoms(const ConvexPolygon& omega, std::size_t n, std::uint64_t seed,
                                  bool distinct_first, double gap_min = 0.0);

/// Validated atoms for the config (generated when none are given). Wraps
/// validation failures in ConfigError.
Atoms resolve_atoms(const ProblemConfig& config);

/// 17 significant digits; inf/nan spelled as strtod accepts them.
std::string format_real(double x);

/// Two-decimal percentage, e.g. "-4.41%".
std::string format_percent(double fraction);

/// step,frame,eps,weight_ratio,p_1..p_N,area_1..area_N,z1,z2,min_eig
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
std::vector<Sample> read_trajectory_csv(std::istream& is);

struct AreaError {
  std::size_t atom = 0;
  double area = 0.0;
  double relative_error = 0.0;
};

/// Relative errors (|C_i| - m) / m of a set of areas.
std::vector<AreaError> relative_area_errors(const std::vector<double>& areas, double target);

/// atom,area,relative_error,relative_error_pct
void write_errors_csv(std::ostream& os, const std::vector<AreaError>& errors);
std::vector<AreaError> read_errors_csv(std::istream& is);

struct CorrelationRow {
  std::string source;  // "exact" or "continuation"
  double eps = 0.0;
  double weight_ratio = 0.0;
  Point z;
};

void write_correlation_csv(std::ostream& os, const std::vector<CorrelationRow>& rows);
std::vector<CorrelationRow> read_correlation_csv(std::istream& is);

/// Affine map from omega's bounding box onto the 800 x 800 view box, x2 up.
struct SvgViewport {
  double min1 = 0.0;
  double min2 = 0.0;
  double scale = 1.0;
  static constexpr double kSize = 800.0;

  static SvgViewport fit(const ConvexPolygon& omega);
  Point to_view(Point x) const;
  Point from_view(Point v) const;
};

/// One filled <polygon> per cell (empty cells emit an empty points list) and
/// one <circle> per atom.
void write_svg(std::ostream& os, const std::vector<ConvexPolygon>& cells, const Atoms& atoms,
               const ConvexPolygon& omega, const std::string& title = {});

}  // namespace sdot::io
