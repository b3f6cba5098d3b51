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
 * @file flip_models.hpp
 * Classical flip models for the friend's memory across Wigner's
 * measurement.
 *
 * A flip model assigns the probability that the friend's record changes
 * value, conditioned on the record before the measurement (superscript n)
 * and, for the four-parameter family, on Bob's record (superscript m):
 *
 *   family      parameters              q(n, m)
 *   single      q                       q
 *   two         q0, q1                  q_n        (simple scenario)
 *   joint-two   q0, q1                  q_n        (extended scenario)
 *   four        q00, q01, q10, q11      q_nm
 *
 * Each solver writes the consistency conditions as linear equations in the
 * parameters, decides feasibility over [0,1]^k exactly, and resolves any
 * leftover freedom with lexicographic tie-breaks:
 *   1. four only: smallest dependence on Bob's record, max_n |q_n0 - q_n1|;
 *   2. smallest outcome asymmetry, max_m |q_1m - q_0m|;
 *   3. the secondary rule (see SecondaryRule).
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wfmemory/parallel.hpp"
#include "wfmemory/scenarios.hpp"

namespace wfm {

enum class FlipFamily { single, two, joint_two, four };
enum class FlipStatus { feasible, infeasible, underdetermined_resolved };

/// Rule for freedom left after the asymmetry tie-breaks.
enum class SecondaryRule {
    /// Closest (Euclidean) to the flip probability 2|a|^2|b|^2 that Wigner's
    /// measurement induces on a definite record.
    reference_flip,
    /// Smallest total flip mass.
    min_mass,
};

std::string to_string(FlipFamily f);
std::string to_string(FlipStatus s);
std::string to_string(SecondaryRule r);

/// coefficients . q = rhs
struct FlipEquation {
    std::string name;
    std::vector<double> coefficients;
    double rhs = 0.0;
};

struct InfeasibilityCertificate {
    std::string equation;  ///< equation with the largest violation at the
                           ///< Chebyshev point
    double violation_floor; ///< every q in [0,1]^k violates some equation
                            ///< by at least this much
};

struct FlipSolution {
    FlipFamily family = FlipFamily::single;
    FlipStatus status = FlipStatus::infeasible;
    /// single: {q}; two, joint-two: {q0, q1}; four: {q00, q01, q10, q11}.
    std::vector<double> parameters;
    /// Bob-averaged (q̄0, q̄1); four-parameter solutions only.
    std::optional<std::array<double, 2>> effective;
    /// Value of the first applicable tie-break objective: q1 - q0 for two
    /// and joint-two, max_n |q_n0 - q_n1| for four, 0 for single.
    double epsilon = 0.0;
    double residual = 0.0; ///< max equation violation of `parameters`
    std::optional<InfeasibilityCertificate> certificate;
    double reference = 0.0; ///< 2|a|^2|b|^2
    SecondaryRule rule = SecondaryRule::reference_flip;
    std::vector<FlipEquation> equations;

    [[nodiscard]] bool feasible() const {
        return status != FlipStatus::infeasible;
    }
    /// Flip probability of record n given Bob's record m.
    [[nodiscard]] double q(std::size_t n, std::size_t m = 0) const;
};

/// Box-membership slack and equation tolerance for feasibility.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Single q against the friend's t2 marginal (simple scenario).
FlipSolution solve_single_flip(const ScenarioConfig &config,
                               SecondaryRule rule = SecondaryRule::reference_flip);
/// (q0, q1) against the friend's t2 marginal (simple scenario).
FlipSolution solve_outcome_flip(const ScenarioConfig &config,
                                SecondaryRule rule = SecondaryRule::reference_flip);
/// (q0, q1) against the t2 and t3 joint tables (extended scenario).
FlipSolution solve_joint_flip(const ScenarioConfig &config,
                              SecondaryRule rule = SecondaryRule::reference_flip);
/// (q00, q01, q10, q11) against the joint tables (extended scenario).
FlipSolution solve_conditional_flip(
    const ScenarioConfig &config,
    SecondaryRule rule = SecondaryRule::reference_flip);

/// Dispatch by family.
FlipSolution solve_flip(FlipFamily family, const ScenarioConfig &config,
                        SecondaryRule rule = SecondaryRule::reference_flip);

/// q̄n = p(B2=0) q_n0 + p(B2=1) q_n1. Four-parameter solutions only.
std::array<double, 2> effective_flip(const FlipSolution &solution,
                                     const OutcomeDistribution &bob_t2);

/// p(f3, B3) = sum_f2 p(f2, B3) p(f3 | f2, B3); Bob's record is unchanged.
JointTable reconstruct_joint(const FlipSolution &solution,
                             const JointTable &pre);

/// p(f2) = sum_f1 p(f1) p(f2 | f1) for the simple scenario.
OutcomeDistribution reconstruct_marginal(const FlipSolution &solution,
                                         const OutcomeDistribution &pre);

/**
 * @brief Symmetric no-signaling candidate q00 = q11 for the maximally
 * entangled pair with Bob in the tilted basis (mu = 1/sqrt3,
 * nu = sqrt(2/3)), Wigner at a = sin x, b = cos x.
 */
struct FeasibilityPoint {
    double x = 0.0;
    double cos_delta_phi = 1.0;
    double q00 = 0.0;
    bool feasible = true;
};

/// Tolerance on [0,1] membership of q00.
inline constexpr double kSweepTolerance = 1e-12;

FeasibilityPoint no_signaling_feasibility(double x, double cos_delta_phi);

/// Uniform grid of `steps` points over [0, pi/2], endpoints included.
std::vector<FeasibilityPoint>
feasibility_sweep(std::size_t steps, double cos_delta_phi,
                  Execution exec = Execution::parallel);

bool any_infeasible(const std::vector<FeasibilityPoint> &points);

} // namespace wfm
