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
 * @file protocol.hpp
 * Hidden-variable simulation of the signaling protocol: Bob encodes one bit
 * per repetition in his basis choice, the friend decodes it from whether most
 * of her N registers flipped during Wigner's collective measurement.
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "wfmemory/flip_models.hpp"
#include "wfmemory/parallel.hpp"
#include "wfmemory/random.hpp"
#include "wfmemory/scenarios.hpp"

namespace wfm {

/// Bit 0: computational basis (mu = 1, nu = 0).
/// Bit 1: tilted basis (mu = 1/sqrt3, nu = sqrt(2/3)).
enum class BobSetting { computational = 0, tilted = 1 };

inline constexpr double kProtocolWignerAngle = std::numbers::pi / 8.0;

/// Maximally entangled pair, Wigner at a = sin(angle), b = cos(angle).
ScenarioConfig protocol_config(BobSetting setting,
                               double wigner_angle = kProtocolWignerAngle);

struct ProtocolTables {
    JointTable t2;
    JointTable t3;
    double q = 0.0; ///< scalar flip probability of the joint-two model
};

ProtocolTables theoretical_protocol_tables(
    BobSetting setting, double wigner_angle = kProtocolWignerAngle);

/// Classical record dynamics: draw (f2, B2) from `pre`, then flip f with
/// probability flip[f2][B2]; Bob's record never changes.
struct HiddenVariableModel {
    JointTable pre;
    std::array<std::array<double, 2>, 2> flip{};
};

/// Model built from the four-parameter solution for `config`.
HiddenVariableModel hidden_variable_model(const ScenarioConfig &config);

struct ProtocolConfig {
    std::size_t n_registers = 1000;
    std::vector<int> bob_message; ///< one bit per repetition
    double wigner_angle = kProtocolWignerAngle;
    std::uint64_t seed = 42;

    void validate() const;
};

enum class Verdict { mostly_unflipped, mostly_flipped, tie };
std::string to_string(Verdict v);

struct RepetitionResult {
    int bit_sent = 0;
    std::size_t flip_count = 0;
    double flip_fraction = 0.0;
    Verdict verdict = Verdict::tie;
    int decoded_bit = 0;
    /// Registers reading 0 after Wigner's measurement (no-signaling check).
    std::size_t friend_zero_after = 0;
};

struct ProtocolResult {
    std::vector<RepetitionResult> repetitions;
    std::vector<int> decoded;
    std::size_t bit_errors = 0;
    std::array<double, 2> theoretical_q{}; ///< per Bob setting
};

/**
 * @brief Run every repetition of the protocol.
 *
 * Repetition r draws from `RandomStream(seed).child(r)`; a tie verdict
 * (exactly N/2 flips) is decoded with a fair coin from the same stream.
 */
ProtocolResult run_protocol(const ProtocolConfig &config,
                            Execution exec = Execution::parallel);

/// Fraction of decoded bits differing from `truth`.
double channel_error_rate(const ProtocolResult &result,
                          const std::vector<int> &truth);

struct ConsistencyReport {
    EmpiricalTable empirical_t2;
    EmpiricalTable empirical_t3;
    JointTable analytic_t3;
    double max_deviation = 0.0;    ///< max cell |empirical_t3 - analytic_t3|
    double max_t2_deviation = 0.0; ///< max cell |empirical_t2 - model.pre|
};

/// Monte Carlo of the hidden-variable process against an analytic t3 table.
ConsistencyReport hidden_variable_consistency(const HiddenVariableModel &model,
                                              const JointTable &analytic_t3,
                                              std::size_t samples,
                                              const RandomStream &stream,
                                              Execution exec =
                                                  Execution::parallel);

/// Model from `config`, compared with extended_joint_table(config, t3).
ConsistencyReport hidden_variable_consistency(const ScenarioConfig &config,
                                              std::size_t samples,
                                              const RandomStream &stream,
                                              Execution exec =
                                                  Execution::parallel);

/// Binomial standard error sqrt(p(1-p)/n).
double standard_error(double p, std::size_t n);

/// Random message of `bits` bits from RandomStream(seed, substream).
std::vector<int> random_message(std::size_t bits, std::uint64_t seed,
                                std::uint64_t substream = 0x6d657373ULL);

} // namespace wfm
