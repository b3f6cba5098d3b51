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
 * @file quantum_core.hpp
 * Pure-state quantum mechanics over a small labeled tensor product: state
 * vectors, observer measurement unitaries, projective outcome probabilities,
 * Lüders collapse and Born-rule sampling.
 *
 * Basis ordering is row-major in factor order: the first factor is the most
 * significant digit of the flat amplitude index.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wfmemory/random.hpp"

namespace wfm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Absolute tolerance for norms, projector identities and probabilities.
inline constexpr double kNormTolerance = 1e-12;

/// Thrown when an input violates a physical or structural precondition.
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Factor {
    std::string label;
    std::size_t dim;

    bool operator==(const Factor &) const = default;
};

/**
 * @brief Normalized pure state on a labeled tensor product.
 *
 * Immutable after construction. Memory registers are ordinary factors whose
 * computational basis states are the perception (record) states; basis
 * state 0 doubles as the observer's ready state.
 */
class StateVector {
  public:
    /// Throws DomainError unless labels are unique, the amplitude count is
    /// the product of the dimensions, and the norm is 1 within 1e-12.
    StateVector(std::vector<Factor> factors, std::vector<Complex> amplitudes);

    /// Single-factor computational basis state |index>.
    static StateVector basis(std::string label, std::size_t dim,
                             std::size_t index);
    /// Single-factor state with the given amplitudes.
    static StateVector single(std::string label,
                              std::vector<Complex> amplitudes);

    [[nodiscard]] const std::vector<Factor> &factors() const {
        return factors_;
    }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const {
        return amplitudes_;
    }
    [[nodiscard]] std::size_t size() const { return amplitudes_.size(); }
    [[nodiscard]] double norm() const;

    [[nodiscard]] bool has_factor(const std::string &label) const;
    /// Position of `label` in the factor list; throws DomainError if absent.
    [[nodiscard]] std::size_t factor_index(const std::string &label) const;

    /// Amplitude of the basis state with the given digits (factor order).
    [[nodiscard]] Complex amplitude(std::span<const std::size_t> digits) const;
    [[nodiscard]] Complex
    amplitude(std::initializer_list<std::size_t> digits) const {
        return amplitude(std::span<const std::size_t>(digits.begin(),
                                                      digits.size()));
    }

  private:
    std::vector<Factor> factors_;
    std::vector<Complex> amplitudes_;
};

/// A matrix acting on an ordered subset of factors.
struct LocalOperator {
    std::vector<std::string> factors;
    CMatrix matrix;
};

struct MeasurementOutcome {
    std::string label;
    LocalOperator projector;
};

/**
 * @brief Projective measurement on an ordered subset of factors.
 *
 * The listed projectors must be Hermitian, idempotent and mutually
 * orthogonal within 1e-12. The remainder projector `1 - sum(P)` completes
 * the identity and is kept explicitly even when it has zero weight.
 */
class ProjectiveMeasurement {
  public:
    ProjectiveMeasurement(std::vector<Factor> factors,
                          std::vector<MeasurementOutcome> outcomes,
                          std::string remainder_label = "perp");

    /// Rank-1 projectors onto the given orthonormal vectors.
    static ProjectiveMeasurement
    from_vectors(std::vector<Factor> factors,
                 const std::vector<std::pair<std::string, CVector>> &vectors,
                 std::string remainder_label = "perp");

    /// Computational basis of one factor, outcome labels "0", "1", ...
    static ProjectiveMeasurement computational(const Factor &factor);

    [[nodiscard]] const std::vector<Factor> &factors() const {
        return factors_;
    }
    [[nodiscard]] std::vector<std::string> factor_labels() const;
    [[nodiscard]] const std::vector<MeasurementOutcome> &outcomes() const {
        return outcomes_;
    }
    [[nodiscard]] const MeasurementOutcome &remainder() const {
        return remainder_;
    }
    /// True if the remainder projector is nonzero (trace above 1e-12).
    [[nodiscard]] bool has_remainder() const;
    /// Listed outcomes followed by the remainder when it is nonzero.
    [[nodiscard]] std::vector<MeasurementOutcome> complete_outcomes() const;
    /// Outcome by label (remainder included); throws DomainError.
    [[nodiscard]] const MeasurementOutcome &
    outcome(const std::string &label) const;

  private:
    std::vector<Factor> factors_;
    std::vector<MeasurementOutcome> outcomes_;
    MeasurementOutcome remainder_;
};

/// Identity operator on the named factors of `state`.
LocalOperator identity_on(const StateVector &state,
                          const std::vector<std::string> &factors);

/// Outer product; throws DomainError on duplicate labels.
StateVector tensor_product(const StateVector &left, const StateVector &right);

/**
 * @brief Von Neumann measurement interaction U: |i>_S|r>_O -> |i>_S|I_i>_O.
 *
 * Outcome k of `measurement.complete_outcomes()` is recorded as basis state
 * |k> of the observer factor; basis state |0> is the ready state. Throws
 * DomainError if the observer is not ready on every branch, if the observer
 * register is too small to record every outcome, or if the measured factors
 * are missing.
 */
StateVector apply_observer_unitary(const StateVector &state,
                                   const ProjectiveMeasurement &measurement,
                                   const std::string &observer_factor);

/// <psi| P |psi>, clamped into [0, 1] after checking it lies there within
/// 1e-12.
double outcome_probability(const StateVector &state,
                           const LocalOperator &projector);

/// <psi| P_a (x) P_b |psi>; throws DomainError if the factor sets overlap.
double joint_outcome_probability(const StateVector &state,
                                 const LocalOperator &projector_a,
                                 const LocalOperator &projector_b);

/// Project and renormalize; throws DomainError on a zero-probability
/// outcome.
StateVector lueders_collapse(const StateVector &state,
                             const LocalOperator &projector);

struct SampledOutcome {
    std::string label;
    std::size_t index; ///< position in measurement.complete_outcomes()
    StateVector state;
};

/// Born-rule sample followed by Lüders collapse.
SampledOutcome sample_outcome(const StateVector &state,
                              const ProjectiveMeasurement &measurement,
                              RandomStream &stream);

/// P|psi> without renormalization (amplitudes in the state's basis).
std::vector<Complex> apply_local(const StateVector &state,
                                 const LocalOperator &op);

} // namespace wfm
