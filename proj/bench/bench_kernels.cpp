// SPDX-License-Identifier: Apache-2.0
//
// squintless: wideband beam-squint mitigation with rotatable antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "squintless/kernels.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

using namespace squintless;

namespace
{

struct Inputs
{
    std::vector<double> phases, omegas, freqs, thetas;
};

Inputs make_inputs(std::size_t n, std::size_t l)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    Inputs in;
    in.phases.resize(n);
    for (auto &p : in.phases)
        p = u(rng);
    in.omegas.resize(l);
    for (std::size_t i = 0; i < l; ++i)
        in.omegas[i] = 1.49 + 1.81 * static_cast<double>(i) / static_cast<double>(l - 1);
    in.freqs.resize(l);
    in.thetas.resize(l);
    for (std::size_t i = 0; i < l; ++i)
    {
        in.freqs[i] = 0.95e12 + 1e11 * static_cast<double>(i) / static_cast<double>(l - 1);
        in.thetas[i] = (std::numbers::pi / 3) * static_cast<double>(i) / static_cast<double>(l - 1);
    }
    return in;
}

template <bool Parallel>
void BM_CompositeGains(benchmark::State &state)
{
    const auto in = make_inputs(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    std::vector<double> out(in.omegas.size());
    for (auto _ : state)
    {
        if constexpr (Parallel)
            kernels::composite_gains_omp(in.phases, 0.9, in.omegas, out);
        else
            kernels::composite_gains_serial(in.phases, 0.9, in.omegas, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel>
void BM_Surrogates(benchmark::State &state)
{
    const auto in = make_inputs(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    std::vector<Quadratic> out(in.omegas.size());
    for (auto _ : state)
    {
        if constexpr (Parallel)
            kernels::surrogates_omp(in.phases, 0.9, in.omegas, out);
        else
            kernels::surrogates_serial(in.phases, 0.9, in.omegas, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel>
void BM_Heatmap(benchmark::State &state)
{
    const auto in = make_inputs(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    std::vector<double> out(in.freqs.size() * in.thetas.size());
    const double scale = 2.0 * std::numbers::pi * 1.5e-4 / 2.99792458e8;
    for (auto _ : state)
    {
        if constexpr (Parallel)
            kernels::heatmap_omp(in.phases, 1.0, scale, in.freqs, in.thetas, out);
        else
            kernels::heatmap_serial(in.phases, 1.0, scale, in.freqs, in.thetas, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1));
}

} // namespace

BENCHMARK(BM_CompositeGains<false>)->Args({32, 64})->Args({32, 4096})->Args({128, 4096});
BENCHMARK(BM_CompositeGains<true>)->Args({32, 64})->Args({32, 4096})->Args({128, 4096});
BENCHMARK(BM_Surrogates<false>)->Args({32, 64})->Args({64, 1024});
BENCHMARK(BM_Surrogates<true>)->Args({32, 64})->Args({64, 1024});
BENCHMARK(BM_Heatmap<false>)->Args({32, 64})->Args({32, 256});
BENCHMARK(BM_Heatmap<true>)->Args({32, 64})->Args({32, 256});

BENCHMARK_MAIN();
