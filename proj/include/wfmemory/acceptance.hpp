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
/**
 * @file acceptance.hpp
 * The regression suite behind `wfmemory verify-paper` and the acceptance
 * test. Each check is deterministic for a fixed seed.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wfmemory/parallel.hpp"

namespace wfm::acceptance {

/// Seed shipped with the suite; the protocol check is asserted under it.
inline constexpr std::uint64_t kShippedSeed = 42;

struct Options {
    std::uint64_t seed = kShippedSeed;
    std::size_t random_configs = 1000;
    std::size_t mc_samples = 100000;
    std::size_t protocol_registers = 1000;
    std::size_t protocol_bits = 100;
    Execution exec = Execution::parallel;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

CriterionResult protocol_tables(const Options &o);        // 1
CriterionResult closed_form_vs_projectors(const Options &o); // 2
CriterionResult quantum_no_signaling(const Options &o);   // 3
CriterionResult infeasibility_regressions(const Options &o); // 4
CriterionResult round_trip_soundness(const Options &o);   // 5
CriterionResult feasibility_region(const Options &o);     // 6
CriterionResult monte_carlo_convergence(const Options &o); // 7
CriterionResult signaling_demonstration(const Options &o); // 8
CriterionResult solver_hierarchy(const Options &o);       // 9

/// All checks in order. `on_result` (optional) sees each as it finishes.
std::vector<CriterionResult>
run_all(const Options &o,
        const std::function<void(const CriterionResult &)> &on_result = {});

/// "PASS  [1] name: detail"
std::string format_line(const CriterionResult &r);

} // namespace wfm::acceptance
