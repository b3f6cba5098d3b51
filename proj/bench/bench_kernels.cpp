// Copyright 2026 The wfmemory Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "wfmemory/acceptance.hpp"
#include "wfmemory/flip_models.hpp"
#include "wfmemory/protocol.hpp"
#include "wfmemory/scenarios.hpp"

namespace {

wfm::Execution exec_of(const benchmark::State &state) {
    return state.range(0) == 0 ? wfm::Execution::serial
                               : wfm::Execution::parallel;
}

void BM_SampleArrangement(benchmark::State &state) {
    const auto c = wfm::protocol_config(wfm::BobSetting::tilted);
    const wfm::RandomStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wfm::sample_arrangement(
            c, wfm::Arrangement::wigner_then_ask, 20000, rng, exec_of(state)));
    }
}
BENCHMARK(BM_SampleArrangement)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HiddenVariable(benchmark::State &state) {
    const auto c = wfm::protocol_config(wfm::BobSetting::tilted);
    const wfm::RandomStream rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            wfm::hidden_variable_consistency(c, 1000000, rng, exec_of(state)));
    }
}
BENCHMARK(BM_HiddenVariable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Protocol(benchmark::State &state) {
    wfm::ProtocolConfig cfg;
    cfg.bob_message = wfm::random_message(100, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wfm::run_protocol(cfg, exec_of(state)));
    }
}
BENCHMARK(BM_Protocol)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FeasibilitySweep(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            wfm::feasibility_sweep(100000, 1.0, exec_of(state)));
    }
}
BENCHMARK(BM_FeasibilitySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ClosedFormOracle(benchmark::State &state) {
    wfm::acceptance::Options o;
    o.random_configs = 200;
    o.exec = exec_of(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wfm::acceptance::closed_form_vs_projectors(o));
    }
}
BENCHMARK(BM_ClosedFormOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConditionalFlip(benchmark::State &state) {
    wfm::RandomStream rng(4);
    std::vector<wfm::ScenarioConfig> configs;
    for (int i = 0; i < 256; ++i) {
        configs.push_back(wfm::random_config(rng, true));
    }
    for (auto _ : state) {
        std::vector<double> q(configs.size());
        wfm::for_each_index(configs.size(), exec_of(state), [&](std::size_t i) {
            q[i] = wfm::solve_conditional_flip(configs[i]).q(0, 0);
        });
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_ConditionalFlip)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
