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

#include "sdot/continuation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sdot/errors.hpp"
#include "sdot/knothe.hpp"
#include "sdot/oracle.hpp"

namespace sdot {

namespace {

constexpr double kCgTolerance = 1e-12;
constexpr double kJitter = 1e-14;

// Appends samples for eps running from eps_begin to eps_end in `steps` equal
// steps. Returns false when the run stops early; the reason is stored in traj.
bool integrate(const Atoms& atoms, const ConvexPolygon& omega, PriceVector prices,
               double eps_begin, double eps_end, std::size_t steps, Frame frame,
               std::size_t step_offset, bool record_first, const RunOptions& options,
               Trajectory& traj) {
  const double h = (eps_end - eps_begin) / static_cast<double>(steps);
  const auto eps_at = [&](std::size_t k) {
    return k == steps ? eps_end
                      : eps_begin + (eps_end - eps_begin) * static_cast<double>(k) /
                                        static_cast<double>(steps);
  };
  for (std::size_t k = 0; k <= steps; ++k) {
    const double eps = eps_at(k);
    const std::size_t global = step_offset + k;
    const CellComplex complex = build_cells(atoms, Metric{eps}, prices, omega);
    if (!in_admissible_set(complex)) {
      std::ostringstream msg;
      msg << "cell areas left the admissible band at step " << global << " (eps " << eps << ")";
      traj.status = RunStatus::exited_admissible_set;
      traj.failure_step = global;
      traj.message = msg.str();
      return false;
    }
    const ReducedMatrix m = hessian(complex, atoms);
    if (k > 0 || record_first) {
      Sample s;
      s.step = global;
      s.frame = frame;
      s.eps = eps;
      if (frame == Frame::direct) {
        s.weight_ratio = eps;
      } else {
        s.weight_ratio = eps > 0.0 ? 1.0 / eps : std::numeric_limits<double>::infinity();
      }
      s.prices = prices;
      s.areas = complex.areas;
      const Point z = correlation_point(complex, atoms);
      s.correlation = frame == Frame::direct ? z : swap_coordinates(z);
      s.min_eig = min_eigenvalue(m);
      traj.samples.push_back(std::move(s));
    }
    if (k == steps) break;

    CgResult solve;
    try {
      solve = cg_solve(m, mixed_derivative(complex, atoms));
    } catch (const LinearSolveFailure& e) {
      traj.status = RunStatus::linear_solve_failure;
      traj.failure_step = global;
      traj.message = e.what();
      return false;
    }
    prices.tail(prices.size() - 1) += h * solve.solution;
    if (options.project_every > 0 && (k + 1) % options.project_every == 0) {
      prices = solve_fixed_eps(atoms, omega, eps_at(k + 1), prices).prices;
    }
  }
  return true;
}

}  // namespace

CgResult cg_solve(const ReducedMatrix& m, const Eigen::VectorXd& rhs) {
  const Eigen::Index n = m.dim();
  CgResult result;
  result.solution = Eigen::VectorXd::Zero(n);
  if (n == 0) return result;
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) return result;
  const double target = kCgTolerance * bnorm;

  Eigen::VectorXd& x = result.solution;
  const auto pass = [&](std::size_t max_iter) {
    Eigen::VectorXd res = rhs - m.entries * x;
    Eigen::VectorXd dir = res;
    double rr = res.squaredNorm();
    for (std::size_t k = 0; k < max_iter && std::sqrt(rr) > target; ++k) {
      const Eigen::VectorXd ad = m.entries * dir;
      const double curvature = dir.dot(ad);
      if (!(curvature > 0.0)) break;
      const double alpha = rr / curvature;
      x += alpha * dir;
      res -= alpha * ad;
      const double rr_next = res.squaredNorm();
      dir = res + (rr_next / rr) * dir;
      rr = rr_next;
      ++result.iterations;
    }
    result.relative_residual = (rhs - m.entries * x).norm() / bnorm;
    return result.relative_residual <= kCgTolerance;
  };

  const auto dim = static_cast<std::size_t>(n);
  if (pass(dim)) return result;

  result.restarted = true;
  const double jitter = kJitter * std::max(1.0, x.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < n; ++k) x[k] += (k % 2 == 0 ? jitter : -jitter);
  if (pass(2 * dim)) return result;

  std::ostringstream msg;
  msg << "conjugate gradients stalled at relative residual " << result.relative_residual
      << " after " << result.iterations << " iterations";
  throw LinearSolveFailure(0, msg.str());
}

PriceVector price_velocity(const CellComplex& complex, const Atoms& atoms) {
  PriceVector v = PriceVector::Zero(static_cast<Eigen::Index>(complex.size()));
  if (complex.size() < 2) return v;
  const CgResult z = cg_solve(hessian(complex, atoms), mixed_derivative(complex, atoms));
  v.tail(v.size() - 1) = z.solution;
  return v;
}

EulerState euler_step(const EulerState& state, double h, const Atoms& atoms,
                      const ConvexPolygon& omega) {
  const CellComplex complex = build_cells(atoms, Metric{state.eps}, state.prices, omega);
  if (!in_admissible_set(complex)) {
    std::ostringstream msg;
    msg << "cell areas outside the admissible band at eps " << state.eps;
    throw ExitedAdmissibleSet(0, msg.str());
  }
  EulerState next{state.prices, state.eps + h};
  next.prices += h * price_velocity(complex, atoms);
  return next;
}

Atoms swap_coordinates(const Atoms& atoms) {
  Atoms out;
  out.points.reserve(atoms.size());
  for (const Point& p : atoms.points) out.points.push_back(swap_coordinates(p));
  return out;
}

Trajectory run(const Atoms& atoms, const ConvexPolygon& omega, const Schedule& schedule,
               const RunOptions& options) {
  if (schedule.steps == 0) throw std::invalid_argument("schedule needs at least one step");
  if (schedule.kind == ScheduleKind::full_sweep) {
    require_coordinate_gap(atoms, 1, default_gap(omega));
  }
  Trajectory traj;
  const std::size_t n = schedule.steps;
  const PriceVector p0 = initial_prices(atoms, omega);
  if (!integrate(atoms, omega, p0, 0.0, 1.0, n, Frame::direct, 0, true, options, traj)) {
    return traj;
  }
  if (schedule.kind == ScheduleKind::full_sweep) {
    // At eps = 1 the cost is isotropic, so the direct prices carry over.
    const PriceVector p1 = traj.samples.back().prices;
    integrate(swap_coordinates(atoms), swap_coordinates(omega), p1, 1.0, 0.0, n,
              Frame::reflected, n, false, options, traj);
  }
  return traj;
}

const char* to_string(Frame frame) {
  return frame == Frame::direct ? "direct" : "reflected";
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed:
      return "completed";
    case RunStatus::exited_admissible_set:
      return "exited_admissible_set";
    case RunStatus::linear_solve_failure:
      return "linear_solve_failure";
  }
  return "unknown";
}

}  // namespace sdot
