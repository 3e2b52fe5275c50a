// Copyright 2026 The lassorw Authors
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

#include "lassorw/bench.hpp"
#include "lassorw/irl1.hpp"
#include "lassorw/probgen.hpp"
#include "lassorw/wlasso.hpp"

namespace {

using namespace lassorw;

Problem reference_problem(int k, double lambda = 1e-5) {
  const Instance inst = gen_instance({256, 100, k, {}, trial_seed(0, k, 0)});
  return Problem(inst.a, inst.y, lambda);
}

void BM_SpectralNormSq(benchmark::State& state) {
  const Problem p = reference_problem(15);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm_sq(p.a));
}
BENCHMARK(BM_SpectralNormSq);

void BM_SolveAdmmLasso(benchmark::State& state) {
  const Problem p = reference_problem(static_cast<int>(state.range(0)));
  const Vector w = Vector::Ones(p.cols());
  AdmmConfig cfg;
  cfg.max_iter = 50000;
  for (auto _ : state) benchmark::DoNotOptimize(solve_admm(p, w, cfg).x.data());
}
BENCHMARK(BM_SolveAdmmLasso)->Arg(15)->Arg(35)->Unit(benchmark::kMillisecond);

void BM_StepIst(benchmark::State& state) {
  const Problem p = reference_problem(15);
  const PenaltySpec spec = PenaltySpec::log(0.1);
  Vector x = Vector::Zero(p.cols());
  for (auto _ : state) {
    x = step_ist(p, spec, x, 0.25);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_StepIst);

void BM_RunIrl1Admm(benchmark::State& state) {
  const Problem p = reference_problem(15);
  const PenaltySpec spec = PenaltySpec::log(0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        run_irl1_admm(p, spec, Vector::Zero(p.cols()), {1e-5, 2}).x_hat.data());
}
BENCHMARK(BM_RunIrl1Admm)->Unit(benchmark::kMillisecond);

void BM_RunIrl1Ist(benchmark::State& state) {
  const Problem p = reference_problem(15);
  const PenaltySpec spec = PenaltySpec::log(0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_irl1_ist(p, spec, Vector::Zero(p.cols()), 0.25,
                                          {1e-5, 100000}, true)
                                 .x_hat.data());
}
BENCHMARK(BM_RunIrl1Ist)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
