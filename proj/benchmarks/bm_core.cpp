// Copyright 2026 The coorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "coorbit/cv_tomo.hpp"
#include "coorbit/discrete_ps.hpp"
#include "coorbit/frame.hpp"
#include "coorbit/spin_moyal.hpp"
#include "coorbit/symplectic.hpp"

using namespace coorbit;

static void bm_displacement(benchmark::State& state) {
  const cv::FockSpace f{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(cv::displacement(f, cplx(0.7, -0.4)));
}
BENCHMARK(bm_displacement)->Arg(16)->Arg(32)->Arg(64);

static void bm_dps_frame_bounds(benchmark::State& state) {
  const TomographicSystem sys = dps::heisenberg_system(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(frame_bounds(sys, 2.0));
}
BENCHMARK(bm_dps_frame_bounds)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void bm_spin_roundtrip(benchmark::State& state) {
  const spin::SpinParams p{static_cast<int>(state.range(0))};
  const TomographicSystem sys = spin::moyal_system(p, spin::sphere_grid(p));
  const Operator rho = DensityMatrix::maximally_mixed(p.dim()).op();
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip(sys, rho));
}
BENCHMARK(bm_spin_roundtrip)->Arg(1)->Arg(4)->Arg(8);

static void bm_homodyne_roundtrip(benchmark::State& state) {
  const cv::FockSpace f{static_cast<int>(state.range(0))};
  const TomographicSystem sys = cv::homodyne_system(f, cv::polar_grid(6.0, 48, 64));
  const Operator rho = DensityMatrix::pure(cv::coherent_state(f, 0.5)).op();
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip(sys, rho));
}
BENCHMARK(bm_homodyne_roundtrip)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void bm_vacuum_marginal(benchmark::State& state) {
  const cv::FockSpace f{static_cast<int>(state.range(0))};
  const DensityMatrix vac = DensityMatrix::pure(cv::fock_state(f, 0));
  std::vector<double> xs;
  for (int i = -200; i <= 200; ++i) xs.push_back(i / 50.0);
  for (auto _ : state) benchmark::DoNotOptimize(symplectic::marginal(vac, 0.6, 0.8, xs));
}
BENCHMARK(bm_vacuum_marginal)->Arg(16)->Arg(48);

BENCHMARK_MAIN();
