// Copyright 2026 The qfound Authors
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

// Serial reference vs OpenMP kernels. Both sides use the same shard layout,
// so they compute identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include "qfound/hvmodels.hpp"
#include "qfound/nonlocality.hpp"
#include "qfound/simlab.hpp"

namespace {

using namespace qfound;

constexpr std::int64_t kPairs = 2'000'000;

sim::ExperimentConfig config(int workers) {
  sim::ExperimentConfig cfg;
  cfg.n_pairs = kPairs;
  cfg.visibility = 0.9546;
  cfg.seed = 7;
  cfg.workers = workers;
  return cfg;
}

void BM_SimulateChshSerial(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_chsh_serial(cfg));
  state.SetItemsProcessed(state.iterations() * kPairs);
}

void BM_SimulateChshParallel(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_chsh(cfg));
  state.SetItemsProcessed(state.iterations() * kPairs);
}

void BM_SimulateLhvSerial(benchmark::State& state) {
  const auto strategy = sim::sphere_sign_strategy();
  const auto settings = nonlocal::reference_chsh_settings();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::simulate_lhv_serial(strategy, settings, kPairs / 4, 7, workers));
  state.SetItemsProcessed(state.iterations() * kPairs / 4);
}

void BM_SimulateLhvParallel(benchmark::State& state) {
  const auto strategy = sim::sphere_sign_strategy();
  const auto settings = nonlocal::reference_chsh_settings();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::simulate_lhv(strategy, settings, kPairs / 4, 7, workers));
  state.SetItemsProcessed(state.iterations() * kPairs / 4);
}

const Vec3 kBeta{0.3, -0.4, 0.5};

void BM_BellHvSerial(benchmark::State& state) {
  const auto psi = StateVector::normalize({0.8, Complex(0.3, 0.5)});
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(hv::bell_hv_average_mc_serial(0.2, kBeta, psi, kPairs, 7, workers));
  state.SetItemsProcessed(state.iterations() * kPairs);
}

void BM_BellHvParallel(benchmark::State& state) {
  const auto psi = StateVector::normalize({0.8, Complex(0.3, 0.5)});
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(hv::bell_hv_average_mc(0.2, kBeta, psi, kPairs, 7, workers));
  state.SetItemsProcessed(state.iterations() * kPairs);
}

void BM_ChshOptimize(benchmark::State& state) {
  const auto psi = nonlocal::singlet_state();
  const int restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nonlocal::chsh_optimize(psi, restarts));
}

}  // namespace

BENCHMARK(BM_SimulateChshSerial)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateChshParallel)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateLhvSerial)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateLhvParallel)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BellHvSerial)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BellHvParallel)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChshOptimize)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
