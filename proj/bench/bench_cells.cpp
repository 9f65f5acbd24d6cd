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

// Serial reference versus OpenMP cell construction.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "sdot/cells.hpp"

namespace {

struct Problem {
  sdot::ConvexPolygon omega;
  sdot::Atoms atoms;
  sdot::PriceVector prices;
};

Problem make_problem(std::size_t n) {
  Problem pr;
  pr.omega = sdot::ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<sdot::Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    // Jittered rows keep second coordinates distinct.
    pts.push_back({u(rng), (static_cast<double>(i) + 0.2 + 0.6 * u(rng)) / static_cast<double>(n)});
  }
  pr.atoms = sdot::make_atoms(std::move(pts), pr.omega);
  pr.prices = sdot::PriceVector::Zero(static_cast<Eigen::Index>(n));
  return pr;
}

template <bool Parallel>
void BM_BuildCells(benchmark::State& state) {
  const Problem pr = make_problem(static_cast<std::size_t>(state.range(0)));
  const sdot::Metric metric{0.5};
  for (auto _ : state) {
    auto cx = Parallel ? sdot::build_cells(pr.atoms, metric, pr.prices, pr.omega)
                       : sdot::build_cells_serial(pr.atoms, metric, pr.prices, pr.omega);
    benchmark::DoNotOptimize(cx.areas.data());
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_BuildCells<false>)->Name("build_cells_serial")->Arg(5)->Arg(50)->Arg(200)->Arg(500)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BuildCells<true>)->Name("build_cells_openmp")->Arg(5)->Arg(50)->Arg(200)->Arg(500)
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
