// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "fdc/forster.h"
#include "fdc/heavy_subspace.h"
#include "fdc/learner.h"
#include "fdc/linalg.h"
#include "fdc/massart.h"
#include "fdc/rng.h"
#include "fdc/scaling.h"

namespace fdc {
namespace {

PointSet hard_points(std::size_t d, std::size_t n, int bits) {
  return gen_hard_instance(d, n, bits, 0.2, 17).data.base;
}

void BM_SymEigen(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix m(n, n);
  CounterRng rng(1, 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.normal();
  }
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(m));
}
BENCHMARK(BM_SymEigen)->Arg(4)->Arg(10)->Arg(20);

void BM_HeavySubspacePacking(benchmark::State& state) {
  const PointSet s = hard_points(10, static_cast<std::size_t>(state.range(0)), 32);
  HeavySubspaceOptions opt;
  opt.engine = HeavyEngine::kPacking;
  const RationalSubspace v = RationalSubspace::full(10);
  for (auto _ : state) benchmark::DoNotOptimize(find_heavy_subspace(s, v, opt));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HeavySubspacePacking)->Arg(125)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HeavySubspaceLp(benchmark::State& state) {
  std::vector<IntVec> rows;
  for (std::int64_t i = 0; i < state.range(0); ++i) rows.push_back({1, i, i * i % 7 + 1});
  const PointSet s(3, rows);
  HeavySubspaceOptions opt;
  opt.engine = HeavyEngine::kLinearProgram;
  const RationalSubspace v = RationalSubspace::full(3);
  for (auto _ : state) benchmark::DoNotOptimize(find_heavy_subspace(s, v, opt));
}
BENCHMARK(BM_HeavySubspaceLp)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FixedPointScaling(benchmark::State& state) {
  const PointSet s =
      massart_draw(gaussian_model(10, 20, 0.0, 3), static_cast<std::size_t>(state.range(0)), 3)
          .base;
  const ScalingProblem p = make_scaling_problem(s, Subspace::full(10));
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point_scaling(p, 1e-3, 20000));
}
BENCHMARK(BM_FixedPointScaling)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_EllipsoidScaling(benchmark::State& state) {
  const PointSet s = massart_draw(gaussian_model(3, 12, 0.0, 5), 12, 5).base;
  const ScalingProblem p = make_scaling_problem(s, Subspace::full(3));
  for (auto _ : state) benchmark::DoNotOptimize(ellipsoid_scaling(p, 1e-2, 1.0));
}
BENCHMARK(BM_EllipsoidScaling)->Unit(benchmark::kMillisecond);

void BM_ForsterDecompose(benchmark::State& state) {
  const PointSet s = hard_points(10, static_cast<std::size_t>(state.range(0)), 48);
  for (auto _ : state) benchmark::DoNotOptimize(forster_decompose(s, 1e-3));
}
BENCHMARK(BM_ForsterDecompose)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LearnHardInstance(benchmark::State& state) {
  const MassartModel m = hard_model(10, static_cast<int>(state.range(0)), 0.2, 5);
  LearnerConfig cfg;
  for (auto _ : state) {
    ModelOracle o(m, 5);
    benchmark::DoNotOptimize(learn_halfspace(o, cfg, 1));
  }
}
BENCHMARK(BM_LearnHardInstance)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
}  // namespace fdc

BENCHMARK_MAIN();
