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
 * @file scenarios.hpp
 * The simple (system, friend, Wigner) and extended (pair, friend, Bob,
 * Wigner) Wigner's-friend evolutions, their closed-form memory statistics,
 * and projector-based evaluation of the same quantities on evolved states.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wfmemory/parallel.hpp"
#include "wfmemory/quantum_core.hpp"
#include "wfmemory/random.hpp"

namespace wfm {

/// z = magnitude * exp(i phase).
struct PolarComplex {
    double magnitude = 0.0;
    double phase = 0.0;

    [[nodiscard]] Complex value() const;
    [[nodiscard]] double squared() const { return magnitude * magnitude; }
};

/**
 * @brief Scenario parameters.
 *
 * Initial state alpha|0> + beta|1> (simple) or alpha|0,1> + beta|1,0>
 * (extended); Wigner's basis |W=1> = a|00> + b|11>, |W=2> = b*|00> - a*|11>
 * on system and friend; Bob's basis |B=0> = mu|0> + nu|1>,
 * |B=1> = nu*|0> - mu*|1> (extended only).
 */
struct ScenarioConfig {
    PolarComplex alpha{1.0, 0.0};
    PolarComplex beta{0.0, 0.0};
    PolarComplex wigner_a{1.0, 0.0};
    PolarComplex wigner_b{0.0, 0.0};
    std::optional<PolarComplex> bob_mu;
    std::optional<PolarComplex> bob_nu;

    [[nodiscard]] bool is_extended() const {
        return bob_mu.has_value() && bob_nu.has_value();
    }
    /// Throws DomainError if a pair is not normalized within 1e-12, a
    /// magnitude is negative, or `require_bob` is set and Bob is missing.
    void validate(bool require_bob) const;

    /// Real amplitudes: |alpha|^2 = alpha2, a = sin(x), b = cos(x).
    static ScenarioConfig simple(double alpha2, double wigner_angle);
    /// As `simple` plus mu = cos(y), nu = sin(y).
    static ScenarioConfig extended(double alpha2, double wigner_angle,
                                   double bob_angle);
};

/// Relative phases and interference weights of the closed forms.
struct DerivedInterference {
    double theta = 0.0;    ///< phi_alpha - phi_beta + phi_b - phi_a
    double chi = 0.0;      ///< |alpha||beta|(|a|^3|b| - |a||b|^3) cos(theta)
    double vartheta = 0.0; ///< theta + phi_mu - phi_nu (extended only)
    double xi = 0.0; ///< (|a|^3|b| - |a||b|^3)|alpha||beta||mu||nu| cos(vartheta)
};

DerivedInterference derived_interference(const ScenarioConfig &config);

/// Instants t0 < t1 < t2 (< t3). Only the pairs listed per function are
/// defined; every other query is a DomainError.
enum class Time { t0 = 0, t1 = 1, t2 = 2, t3 = 3 };
enum class Party { wigners_friend, bob };

std::string to_string(Time t);
std::string to_string(Party p);

struct OutcomeDistribution {
    Party party = Party::wigners_friend;
    Time time = Time::t1;
    std::array<double, 2> p{};
};

/// p[f][B]: friend record f, Bob record B.
struct JointTable {
    Time time = Time::t2;
    std::array<std::array<double, 2>, 2> p{};

    [[nodiscard]] double total() const;
    [[nodiscard]] std::array<double, 2> friend_marginal() const;
    [[nodiscard]] std::array<double, 2> bob_marginal() const;
    /// Largest absolute cell difference.
    [[nodiscard]] double max_abs_difference(const JointTable &other) const;
};

/// Factor labels used by the scenario states.
namespace factor {
inline const std::string system = "S";
inline const std::string system_friend_side = "S1";
inline const std::string system_bob_side = "S2";
inline const std::string friend_memory = "F";
inline const std::string bob_memory = "B";
inline const std::string wigner_memory = "W";
} // namespace factor

/// Wigner's record register has three levels: W=1, W=2 and the remainder.
inline constexpr std::size_t kWignerRecordDim = 3;

ProjectiveMeasurement friend_measurement(const std::string &system_label);
ProjectiveMeasurement bob_measurement(const ScenarioConfig &config);
ProjectiveMeasurement wigner_measurement(const ScenarioConfig &config,
                                         const std::string &system_label);

/// States at t0, t1 (friend measured), t2 (Wigner measured).
std::vector<StateVector> simple_states(const ScenarioConfig &config);

/// Closed form at t1 or t2.
OutcomeDistribution simple_friend_marginal(const ScenarioConfig &config,
                                           Time time);

/// States at t0, t1 (friend), t2 (Bob), t3 (Wigner).
std::vector<StateVector> extended_states(const ScenarioConfig &config);

/// Closed form. Friend: t1, t2, t3. Bob: t2, t3.
OutcomeDistribution extended_marginals(const ScenarioConfig &config,
                                       Party party, Time time);

/// Closed form at t2 or t3.
JointTable extended_joint_table(const ScenarioConfig &config, Time time);

// Projector evaluation on an evolved state. These do not touch the closed
// forms and serve as their oracle.
OutcomeDistribution evaluate_marginal(const StateVector &state, Party party,
                                      Time time);
JointTable evaluate_joint_table(const StateVector &state, Time time);
/// Weight of Wigner's remainder record.
double evaluate_remainder_weight(const StateVector &state);

enum class Arrangement { ask_before_wigner, wigner_then_ask };

struct EmpiricalTable {
    JointTable table;
    std::array<std::array<std::size_t, 2>, 2> counts{};
    std::size_t runs = 0;
};

/**
 * @brief Sequential Born sampling of the two records with Lüders collapse.
 *
 * ask-before-wigner reads (f, B) from the t2 state, wigner-then-ask from the
 * t3 state. Runs are split into fixed blocks, block k drawing from
 * `stream.child(k)`, so the result does not depend on `exec`.
 */
EmpiricalTable sample_arrangement(const ScenarioConfig &config,
                                  Arrangement arrangement, std::size_t runs,
                                  const RandomStream &stream,
                                  Execution exec = Execution::parallel);

/// Random configuration: squared magnitudes uniform in [0,1], phases
/// uniform in [0, 2pi).
ScenarioConfig random_config(RandomStream &stream, bool extended);

} // namespace wfm
