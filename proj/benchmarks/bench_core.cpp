// Copyright 2026 The photonctx Authors
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

#include <cstdint>

#include <benchmark/benchmark.h>

#include "photonctx/experiment.hpp"
#include "photonctx/observables.hpp"
#include "photonctx/optics.hpp"
#include "photonctx/rng.hpp"

using namespace photonctx;

namespace {

void bm_build_network(benchmark::State &state) {
    for (auto _ : state) {
        OpticalNetwork net = build_fig1_network();
        benchmark::DoNotOptimize(net);
    }
}
BENCHMARK(bm_build_network);

void bm_propagate(benchmark::State &state) {
    const OpticalNetwork net = build_fig1_network();
    const PhotonState psi = source_state();
    for (auto _ : state) {
        auto out = propagate(net, psi);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(bm_propagate);

void bm_primary_transfer_matrix(benchmark::State &state) {
    const OpticalNetwork net = build_fig1_network();
    for (auto _ : state) {
        auto m = primary_transfer_matrix(net);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(bm_primary_transfer_matrix);

void bm_philox_u64(benchmark::State &state) {
    PhiloxRng rng(12345);
    std::uint64_t sum = 0;
    for (auto _ : state) {
        sum += rng.next_u64();
    }
    benchmark::DoNotOptimize(sum);
}
BENCHMARK(bm_philox_u64);

void bm_analytic_prediction(benchmark::State &state) {
    ImperfectionModel imp;
    imp.visibility = 0.9;
    imp.dark_count_prob = 1e-3;
    imp.efficiency.fill(0.4);
    for (auto _ : state) {
        auto pred = analytic_prediction(Theory::QM, imp);
        benchmark::DoNotOptimize(pred);
    }
}
BENCHMARK(bm_analytic_prediction);

void bm_run_experiment(benchmark::State &state) {
    const auto theory = state.range(0) == 0 ? Theory::QM : Theory::NCHV;
    const int threads = static_cast<int>(state.range(1));
    ImperfectionModel imp;
    imp.dark_count_prob = 1e-3;
    imp.efficiency.fill(0.8);
    const std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto counts = run_experiment(theory, Context::A, imp, trials, seed++,
                                     threads);
        benchmark::DoNotOptimize(counts);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(trials));
}
BENCHMARK(bm_run_experiment)
    ->ArgsProduct({{0, 1}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
