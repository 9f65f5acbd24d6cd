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

#include "sdot/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "sdot/continuation.hpp"
#include "sdot/dual.hpp"
#include "sdot/errors.hpp"
#include "sdot/knothe.hpp"
#include "sdot/oracle.hpp"

namespace sdot::app {

namespace fs = std::filesystem;

namespace {

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out);
}

nlohmann::json atoms_json(const Atoms& atoms) {
  nlohmann::json a = nlohmann::json::array();
  for (const Point& p : atoms.points) a.push_back({p.x1, p.x2});
  return a;
}

// JSON has no infinity; keep the report parseable.
nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

double max_abs_relative_error(const std::vector<io::AreaError>& errors) {
  double worst = 0.0;
  for (const auto& e : errors) worst = std::max(worst, std::abs(e.relative_error));
  return worst;
}

std::string snapshot_name(const Sample& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%seps_%.4f.svg", s.frame == Frame::direct ? "" : "reflected_",
                s.eps);
  return buf;
}

void write_snapshot(const fs::path& dir, const Sample& s, const Atoms& atoms,
                    const ConvexPolygon& omega) {
  fs::create_directories(dir);
  char title[96];
  std::snprintf(title, sizeof title, "%s frame, eps = %.6g", to_string(s.frame), s.eps);
  write_file(dir / snapshot_name(s), [&](std::ostream& os) {
    io::write_svg(os, sample_cells(s, atoms, omega), atoms, omega, title);
  });
}

std::vector<std::size_t> snapshot_indices(std::size_t samples, std::size_t wanted) {
  std::vector<std::size_t> idx;
  if (samples == 0 || wanted == 0) return idx;
  if (wanted == 1) return {samples - 1};
  for (std::size_t k = 0; k < wanted; ++k) {
    const auto i = static_cast<std::size_t>(std::llround(
        static_cast<double>(k) * static_cast<double>(samples - 1) / static_cast<double>(wanted - 1)));
    if (idx.empty() || idx.back() != i) idx.push_back(i);
  }
  return idx;
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::completed:
      return kOk;
    case RunStatus::exited_admissible_set:
      return kExitedAdmissibleSet;
    case RunStatus::linear_solve_failure:
      return kLinearSolveFailure;
  }
  return kFailure;
}

Sample exact_sample(const Atoms& atoms, const ConvexPolygon& omega, double eps,
                    const PriceVector& prices, CellComplex* built = nullptr) {
  CellComplex complex = build_cells(atoms, Metric{eps}, prices, omega);
  Sample s;
  s.eps = eps;
  s.weight_ratio = eps;
  s.prices = prices;
  s.areas = complex.areas;
  s.correlation = correlation_point(complex, atoms);
  s.min_eig = min_eigenvalue(hessian(complex, atoms));
  if (built != nullptr) *built = std::move(complex);
  return s;
}

}  // namespace

std::vector<ConvexPolygon> sample_cells(const Sample& sample, const Atoms& atoms,
                                        const ConvexPolygon& omega) {
  if (sample.frame == Frame::direct) {
    return build_cells(atoms, Metric{sample.eps}, sample.prices, omega).cells;
  }
  std::vector<ConvexPolygon> cells =
      build_cells(swap_coordinates(atoms), Metric{sample.eps}, sample.prices,
                  swap_coordinates(omega))
          .cells;
  for (auto& c : cells) c = swap_coordinates(c);
  return cells;
}

int cmd_continue(const io::ProblemConfig& config, const fs::path& out_dir) {
  const Atoms atoms = io::resolve_atoms(config);
  fs::create_directories(out_dir);
  const Trajectory traj = run(atoms, config.omega, config.schedule, {config.project_every});

  write_file(out_dir / "trajectory.csv", [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });

  std::vector<io::AreaError> errors;
  if (!traj.samples.empty()) {
    const double target = area(config.omega) / static_cast<double>(atoms.size());
    errors = io::relative_area_errors(traj.samples.back().areas, target);
  }
  write_file(out_dir / "errors.csv", [&](std::ostream& os) { io::write_errors_csv(os, errors); });

  std::vector<io::CorrelationRow> rows;
  for (const Sample& s : traj.samples) {
    rows.push_back({"continuation", s.eps, s.weight_ratio, s.correlation});
  }
  write_file(out_dir / "correlation.csv", [&](std::ostream& os) { io::write_correlation_csv(os, rows); });

  for (std::size_t i : snapshot_indices(traj.samples.size(), config.snapshots)) {
    write_snapshot(out_dir / "snapshots", traj.samples[i], atoms, config.omega);
  }

  double smallest_eig = std::numeric_limits<double>::infinity();
  for (const Sample& s : traj.samples) smallest_eig = std::min(smallest_eig, s.min_eig);

  nlohmann::json report;
  report["command"] = "continue";
  report["status"] = to_string(traj.status);
  report["message"] = traj.message;
  if (traj.status != RunStatus::completed) report["failure_step"] = traj.failure_step;
  report["schedule"] = config.schedule.kind == ScheduleKind::standard ? "standard" : "full_sweep";
  report["steps"] = config.schedule.steps;
  report["project_every"] = config.project_every;
  report["samples"] = traj.samples.size();
  report["final_eps"] = traj.samples.empty() ? nlohmann::json(nullptr) : nlohmann::json(traj.samples.back().eps);
  report["max_abs_relative_error"] = max_abs_relative_error(errors);
  report["min_eigenvalue"] = finite_or_null(smallest_eig);
  report["seed"] = config.seed;
  report["atoms"] = atoms_json(atoms);
  write_file(out_dir / "report.json", [&](std::ostream& os) { os << report.dump(2) << '\n'; });

  if (traj.status != RunStatus::completed) std::cerr << "sdot: " << traj.message << '\n';
  return exit_code(traj.status);
}

int cmd_exact(const io::ProblemConfig& config, const fs::path& out_dir) {
  const Atoms atoms = io::resolve_atoms(config);
  fs::create_directories(out_dir);
  const SolveReport solved =
      solve_fixed_eps(atoms, config.omega, config.eps, initial_prices(atoms, config.omega));

  CellComplex complex;
  Trajectory traj;
  traj.samples.push_back(exact_sample(atoms, config.omega, config.eps, solved.prices, &complex));
  const Sample& s = traj.samples.back();

  const double target = area(config.omega) / static_cast<double>(atoms.size());
  const auto errors = io::relative_area_errors(s.areas, target);
  write_file(out_dir / "trajectory.csv", [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
  write_file(out_dir / "errors.csv", [&](std::ostream& os) { io::write_errors_csv(os, errors); });
  write_file(out_dir / "correlation.csv", [&](std::ostream& os) {
    io::write_correlation_csv(os, {{"exact", s.eps, s.weight_ratio, s.correlation}});
  });
  if (config.snapshots > 0) write_snapshot(out_dir / "snapshots", s, atoms, config.omega);

  nlohmann::json report;
  report["command"] = "exact";
  report["status"] = "completed";
  report["eps"] = config.eps;
  report["iterations"] = solved.iterations;
  report["grad_norm"] = solved.grad_norm;
  report["strip_deviation"] = strip_deviation(complex, atoms, config.omega);
  report["max_abs_relative_error"] = max_abs_relative_error(errors);
  report["min_eigenvalue"] = finite_or_null(s.min_eig);
  report["seed"] = config.seed;
  report["atoms"] = atoms_json(atoms);
  write_file(out_dir / "report.json", [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  return kOk;
}

std::vector<io::CorrelationRow> exact_correlation_curve(const Atoms& atoms,
                                                        const ConvexPolygon& omega,
                                                        std::size_t grid) {
  std::vector<io::CorrelationRow> rows;
  PriceVector p = initial_prices(atoms, omega);
  for (std::size_t k = 0; k < grid; ++k) {
    const double eps = static_cast<double>(k) / static_cast<double>(grid - 1);
    if (k > 0) p = solve_fixed_eps(atoms, omega, eps, p).prices;
    const CellComplex complex = build_cells(atoms, Metric{eps}, p, omega);
    rows.push_back({"exact", eps, eps, correlation_point(complex, atoms)});
  }
  return rows;
}

CurveCheck check_correlation_curve(const std::vector<io::CorrelationRow>& curve, double tol) {
  CurveCheck check;
  check.concave_decreasing = true;
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const Point dz = curve[k + 1].z - curve[k].z;
    // A stationary curve (e.g. atoms sharing x1) has no slope to check.
    if (norm(dz) <= 1e-12 * (1.0 + norm(curve[k].z))) continue;
    const double slope = dz.x2 / dz.x1;
    const double eps_mid = 0.5 * (curve[k].eps + curve[k + 1].eps);
    check.max_slope_deviation = std::max(check.max_slope_deviation, std::abs(slope + eps_mid));
    if (!(slope <= tol)) check.concave_decreasing = false;
    if (!check.slopes.empty() && !(slope <= check.slopes.back() + tol)) {
      check.concave_decreasing = false;
    }
    check.slopes.push_back(slope);
  }
  return check;
}

int cmd_correlation(const io::ProblemConfig& config, const fs::path& out_dir) {
  const Atoms atoms = io::resolve_atoms(config);
  fs::create_directories(out_dir);
  std::vector<io::CorrelationRow> rows = exact_correlation_curve(atoms, config.omega, config.grid);
  const CurveCheck check = check_correlation_curve(rows, 1e-6);

  Schedule schedule = config.schedule;
  schedule.kind = ScheduleKind::standard;
  const Trajectory traj = run(atoms, config.omega, schedule, {config.project_every});
  double max_gap = 0.0;
  for (std::size_t k = 0; k < config.grid; ++k) {
    const double eps = rows[k].eps;
    const Sample* nearest = nullptr;
    for (const Sample& s : traj.samples) {
      if (nearest == nullptr || std::abs(s.eps - eps) < std::abs(nearest->eps - eps)) nearest = &s;
    }
    if (nearest == nullptr || std::abs(nearest->eps - eps) > 0.5 / static_cast<double>(schedule.steps)) {
      continue;
    }
    max_gap = std::max(max_gap, norm(nearest->correlation - rows[k].z));
    rows.push_back({"continuation", nearest->eps, nearest->weight_ratio, nearest->correlation});
  }
  write_file(out_dir / "correlation.csv", [&](std::ostream& os) { io::write_correlation_csv(os, rows); });

  nlohmann::json report;
  report["command"] = "correlation";
  report["status"] = to_string(traj.status);
  report["grid"] = config.grid;
  report["steps"] = schedule.steps;
  report["concave_decreasing"] = check.concave_decreasing;
  report["max_slope_deviation"] = check.max_slope_deviation;
  report["slopes"] = check.slopes;
  report["max_continuation_gap"] = max_gap;
  report["seed"] = config.seed;
  report["atoms"] = atoms_json(atoms);
  write_file(out_dir / "report.json", [&](std::ostream& os) { os << report.dump(2) << '\n'; });

  if (traj.status != RunStatus::completed) {
    std::cerr << "sdot: " << traj.message << '\n';
    return exit_code(traj.status);
  }
  if (!check.concave_decreasing) {
    std::cerr << "sdot: exact correlation curve is not concave decreasing\n";
    return kFailure;
  }
  return kOk;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Knothe-to-Brenier continuation for semi-discrete optimal transport", "sdot"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::size_t> steps;
  std::optional<double> eps;
  std::optional<std::string> schedule;
  std::optional<std::size_t> snapshots;
  std::optional<std::size_t> project_every;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> num_atoms;
  std::string out_dir = "out";

  app.add_option("--config", config_path, "JSON problem description")->check(CLI::ExistingFile);
  app.add_option("--steps", steps, "Euler steps over eps in [0, 1]")->check(CLI::PositiveNumber);
  app.add_option("--eps", eps, "eps for the exact solve")->check(CLI::NonNegativeNumber);
  app.add_option("--schedule", schedule, "standard or full_sweep")
      ->check(CLI::IsMember({"standard", "full_sweep"}));
  app.add_option("--snapshots", snapshots, "number of SVG snapshots (0 disables)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--project-every", project_every, "re-solve exactly every k steps (0 = never)");
  app.add_option("--seed", seed, "seed for generated atoms");
  app.add_option("--num-atoms", num_atoms, "number of generated atoms")->check(CLI::PositiveNumber);

  auto* cont = app.add_subcommand("continue", "integrate the price ODE from eps = 0 to 1");
  auto* exact = app.add_subcommand("exact", "solve the dual exactly at one eps");
  auto* corr = app.add_subcommand("correlation", "exact and continuation correlation curves");
  for (auto* sub : {cont, exact, corr}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    io::ProblemConfig config = config_path.empty() ? io::ProblemConfig{} : io::load_config(config_path);
    if (steps) config.schedule.steps = *steps;
    if (eps) config.eps = *eps;
    if (schedule) {
      config.schedule.kind = *schedule == "full_sweep" ? ScheduleKind::full_sweep : ScheduleKind::standard;
    }
    if (snapshots) config.snapshots = *snapshots;
    if (project_every) config.project_every = *project_every;
    if (seed) config.seed = *seed;
    if (num_atoms) {
      config.n_atoms = *num_atoms;
      config.atoms.clear();
    }

    if (cont->parsed()) return cmd_continue(config, out_dir);
    if (exact->parsed()) return cmd_exact(config, out_dir);
    return cmd_correlation(config, out_dir);
  } catch (const io::ConfigError& e) {
    std::cerr << "sdot: " << e.what() << '\n';
    return kConfigError;
  } catch (const DegenerateAtoms& e) {
    std::cerr << "sdot: " << e.what() << '\n';
    return kConfigError;
  } catch (const ExitedAdmissibleSet& e) {
    std::cerr << "sdot: " << e.what() << '\n';
    return kExitedAdmissibleSet;
  } catch (const LinearSolveFailure& e) {
    std::cerr << "sdot: " << e.what() << '\n';
    return kLinearSolveFailure;
  } catch (const NoConvergence& e) {
    std::cerr << "sdot: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "sdot: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace sdot::app
