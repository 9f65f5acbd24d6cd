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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every criterion also has a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdot/app.hpp"
#include "sdot/continuation.hpp"
#include "sdot/dual.hpp"
#include "sdot/io.hpp"
#include "sdot/knothe.hpp"
#include "sdot/oracle.hpp"
#include "support.hpp"

using namespace sdot;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Trajectories produced by earlier criteria, audited by criterion 8.
std::vector<std::pair<std::string, Trajectory>> g_trajectories;

const ConvexPolygon& square() {
  static const ConvexPolygon sq = test::unit_square();
  return sq;
}

Atoms fixture_atoms() {
  return make_atoms(io::generate_atoms(square(), 5, test::kFixtureSeed, false), square());
}

double max_relative_error(const Sample& s) {
  const double m = 1.0 / static_cast<double>(s.areas.size());
  double worst = 0.0;
  for (double a : s.areas) worst = std::max(worst, std::abs(a - m) / m);
  return worst;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
  }
  return sxy / sxx;
}

// 1. Gradient, Hessian and eps-derivative against finite differences.
void derivative_oracles(Outcome& out) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pp(-0.02, 0.02);
  std::uniform_real_distribution<double> pe(0.05, 0.95);
  const std::size_t sizes[] = {3, 5, 10};
  const double step = 1e-6;
  double worst_grad = 0, worst_hess = 0, worst_eps = 0;
  const int fixtures = 24;
  for (int f = 0; f < fixtures; ++f) {
    const std::size_t n = sizes[f % 3];
    const Atoms atoms = test::random_atoms(rng, square(), n, 0.02);
    PriceVector p(static_cast<Eigen::Index>(n));
    for (auto& v : p) v = pp(rng);
    const double eps = pe(rng);
    const Metric metric{eps};
    const auto cx = build_cells(atoms, metric, p, square());
    const auto g = gradient(cx);
    const auto m = hessian(cx, atoms);
    const auto de = area_eps_derivative(cx, atoms);
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      PriceVector up = p, down = p;
      up[j] += step;
      down[j] -= step;
      const double fd = (phi(up, metric, atoms, square()) - phi(down, metric, atoms, square())) /
                        (2 * step);
      worst_grad = std::max(worst_grad, std::abs(fd - g[j]));
      if (j == 0) continue;
      const auto au = build_cells(atoms, metric, up, square()).areas;
      const auto ad = build_cells(atoms, metric, down, square()).areas;
      for (Eigen::Index i = 1; i < p.size(); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        worst_hess = std::max(worst_hess,
                              std::abs((au[ui] - ad[ui]) / (2 * step) - m.entries(i - 1, j - 1)));
      }
    }
    const auto eu = build_cells(atoms, Metric{eps + step}, p, square()).areas;
    const auto ed = build_cells(atoms, Metric{eps - step}, p, square()).areas;
    for (std::size_t i = 0; i < n; ++i) {
      worst_eps = std::max(worst_eps,
                           std::abs((eu[i] - ed[i]) / (2 * step) - de[static_cast<Eigen::Index>(i)]));
    }
  }
  out.detail << fixtures << " fixtures, max |grad - fd| " << worst_grad << ", |hess - fd| "
             << worst_hess << ", |d_eps - fd| " << worst_eps;
  out.require(worst_grad <= 1e-5, "gradient tolerance 1e-5");
  out.require(worst_hess <= 1e-4, "hessian tolerance 1e-4");
  out.require(worst_eps <= 1e-4, "eps-derivative tolerance 1e-4");
}

// 2. Structure of M along admissible fixtures and the 3x3 determinant family.
void matrix_properties(Outcome& out) {
  std::mt19937_64 rng(77);
  int matrices = 0;
  double smallest = INFINITY;
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial);
    const Atoms atoms = test::random_atoms(rng, square(), n, 0.01);
    const auto traj = run(atoms, square(), {ScheduleKind::standard, 50});
    out.require(traj.status == RunStatus::completed, "fixture run completed");
    for (const auto& s : traj.samples) {
      const auto cx = build_cells(atoms, Metric{s.eps}, s.prices, square());
      if (!in_admissible_set(cx)) continue;
      const auto m = hessian(cx, atoms);
      ++matrices;
      out.require((m.entries - m.entries.transpose()).cwiseAbs().maxCoeff() == 0.0, "symmetric");
      out.require(rows_diagonally_dominant(m), "H1 diagonal dominance");
      out.require(has_strictly_dominant_row(m), "H2 strictly dominant row");
      out.require(anchored_connectivity(m), "H3 connectivity");
      const double lambda = min_eigenvalue(m);
      smallest = std::min(smallest, lambda);
      out.require(lambda > 0.0, "positive definite");
    }
  }
  double worst_det = 0.0;
  for (double eps : {0.1, 0.01}) {
    Eigen::Matrix3d m;
    m << 1.0, -eps, 0.0, -eps, 1.0, -(1.0 - eps), 0.0, -(1.0 - eps), 1.0;
    worst_det = std::max(worst_det, std::abs(m.determinant() - 2.0 * eps * (1.0 - eps)));
  }
  out.detail << matrices << " matrices, smallest eigenvalue " << smallest
             << ", counterexample det error " << worst_det;
  out.require(matrices > 0, "at least one matrix");
  out.require(worst_det <= 1e-12, "determinant 2 eps (1 - eps)");
}

// 3. Area errors of the seeded five-atom run at eps = 1.
void continuation_accuracy(Outcome& out) {
  const Atoms atoms = fixture_atoms();
  double err[2] = {0, 0};
  const std::size_t steps[] = {100, 500};
  for (int k = 0; k < 2; ++k) {
    auto traj = run(atoms, square(), {ScheduleKind::standard, steps[k]});
    out.require(traj.status == RunStatus::completed, "run completed");
    if (!traj.samples.empty()) err[k] = max_relative_error(traj.samples.back());
    g_trajectories.emplace_back("fixture n=" + std::to_string(steps[k]), std::move(traj));
  }
  const double ratio = err[0] / err[1];
  out.detail << "max relative error n=100 " << io::format_percent(err[0]) << ", n=500 "
             << io::format_percent(err[1]) << ", ratio " << ratio;
  out.require(err[0] <= 0.05, "n=100 error <= 5%");
  out.require(err[1] <= 0.01, "n=500 error <= 1%");
  out.require(ratio >= 3.0 && ratio <= 8.0, "ratio in [3, 8]");
}

// 4. Global O(h) price error against the fixed-eps oracle.
void convergence_rate(Outcome& out) {
  const Atoms atoms = fixture_atoms();
  const std::vector<double> checkpoints{0.25, 0.5, 0.75, 1.0};
  std::vector<PriceVector> exact;
  PriceVector p = initial_prices(atoms, square());
  for (double eps : checkpoints) {
    p = solve_fixed_eps(atoms, square(), eps, p, {1e-13, 1000}).prices;
    exact.push_back(p);
  }
  std::vector<double> ns{100, 200, 400};
  std::vector<double> errs;
  for (double n : ns) {
    const auto steps = static_cast<std::size_t>(n);
    auto traj = run(atoms, square(), {ScheduleKind::standard, steps});
    out.require(traj.status == RunStatus::completed, "run completed");
    double worst = 0.0;
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      const auto idx = static_cast<std::size_t>(std::llround(checkpoints[c] * n));
      if (idx >= traj.samples.size()) continue;
      worst = std::max(worst, (traj.samples[idx].prices - exact[c]).cwiseAbs().maxCoeff());
    }
    errs.push_back(worst);
    g_trajectories.emplace_back("rate n=" + std::to_string(steps), std::move(traj));
  }
  const double slope = fit_slope(ns, errs);
  out.detail << "sup price errors " << errs[0] << ", " << errs[1] << ", " << errs[2]
             << "; log-log slope " << slope;
  out.require(slope >= -1.3 && slope <= -0.7, "slope in [-1.3, -0.7]");
}

// 5. Cells approach the Knothe strips as eps -> 0.
void knothe_limit(Outcome& out) {
  const auto devs = knothe_limit_check(fixture_atoms(), square(), {1e-1, 1e-2, 1e-3});
  out.detail << "strip deviation";
  for (const auto& d : devs) out.detail << " " << d.eps << ":" << d.deviation;
  out.require(devs.size() == 3, "three values");
  if (devs.size() != 3) return;
  out.require(devs[0].deviation > devs[1].deviation && devs[1].deviation > devs[2].deviation,
              "strictly decreasing");
  out.require(devs[2].deviation <= 0.02, "deviation <= 0.02 at 1e-3");
}

// 6. Closed-form Gaussian maps.
void gaussian_closed_form(Outcome& out) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  std::uniform_real_distribution<double> s(-0.95, 0.95);
  double worst_limit = 0, worst_push = 0;
  for (int k = 0; k < 10; ++k) {
    const double a = u(rng), c = u(rng);
    const GaussianSpec spec{a, s(rng) * std::sqrt(a * c), c};
    const auto t0 = gaussian_transport(spec, 1e-8);
    worst_limit = std::max(worst_limit, (t0 - gaussian_knothe_limit(spec)).cwiseAbs().maxCoeff());
    const auto t1 = gaussian_transport(spec, 1.0);
    worst_push = std::max(worst_push, (t1 * t1.transpose() - spec.covariance()).cwiseAbs().maxCoeff());
  }
  out.detail << "10 specs, limit error " << worst_limit << ", push-forward error " << worst_push;
  out.require(worst_limit <= 1e-6, "limit within 1e-6");
  out.require(worst_push <= 1e-12, "T1 T1^T = Sigma within 1e-12");
}

// 7. Exact correlation curve on a 21-point grid.
void correlation_curve(Outcome& out) {
  const Atoms atoms = fixture_atoms();
  const auto curve = app::exact_correlation_curve(atoms, square(), 21);
  const auto check = app::check_correlation_curve(curve, 1e-6);
  const double spacing = 1.0 / 20.0;
  out.detail << "concave decreasing " << (check.concave_decreasing ? "yes" : "no")
             << ", max |slope + eps_mid| " << check.max_slope_deviation;
  out.require(check.slopes.size() == 20, "20 slopes");
  out.require(check.concave_decreasing, "concave decreasing");
  out.require(check.max_slope_deviation <= spacing, "slope within grid spacing of -eps");

  auto sweep = run(atoms, square(), {ScheduleKind::standard, 200});
  out.require(sweep.status == RunStatus::completed, "continuation overlay run completed");
  g_trajectories.emplace_back("correlation overlay", std::move(sweep));
}

// 8. Conservation and guard on every trajectory above plus a full sweep.
void conservation_and_guard(Outcome& out) {
  const Atoms wide = make_atoms(io::generate_atoms(square(), 5, test::kFixtureSeed, true), square(),
                                {0.0, true});
  g_trajectories.emplace_back("full sweep", run(wide, square(), {ScheduleKind::full_sweep, 200}));
  std::size_t samples = 0;
  double worst_sum = 0.0;
  bool guard = true;
  for (const auto& [name, traj] : g_trajectories) {
    for (const auto& s : traj.samples) {
      ++samples;
      double total = 0.0;
      const double m = 1.0 / static_cast<double>(s.areas.size());
      for (double a : s.areas) {
        total += a;
        guard = guard && a > 0.5 * m && a < 2.0 * m;
      }
      worst_sum = std::max(worst_sum, std::abs(total - 1.0));
    }
    out.require(traj.status == RunStatus::completed, name + " completed");
  }
  out.detail << g_trajectories.size() << " trajectories, " << samples
             << " samples, max |sum areas - |omega|| " << worst_sum;
  out.require(worst_sum <= 1e-9, "conservation within 1e-9");
  out.require(guard, "every sample inside the admissible band");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> body;
  };
  const std::vector<Criterion> criteria{
      {"derivative oracles", 10.0, derivative_oracles},
      {"matrix properties", 5.0, matrix_properties},
      {"continuation accuracy", 60.0, continuation_accuracy},
      {"O(h) convergence rate", 180.0, convergence_rate},
      {"Knothe limit", 30.0, knothe_limit},
      {"Gaussian closed form", 1.0, gaussian_closed_form},
      {"correlation curve", 60.0, correlation_curve},
      {"conservation and guard", 60.0, conservation_and_guard},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(seconds <= criteria[k].budget_s, "runtime budget");
    if (!out.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s; %.2f s of %.0f s\n", out.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].name, out.detail.str().c_str(), seconds, criteria[k].budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
