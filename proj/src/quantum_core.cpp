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
#include "wfmemory/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

namespace wfm {

namespace {

std::size_t product_of_dims(const std::vector<Factor> &factors) {
    return std::accumulate(
        factors.begin(), factors.end(), std::size_t{1},
        [](std::size_t acc, const Factor &f) { return acc * f.dim; });
}

double squared_norm(const std::vector<Complex> &amps) {
    double acc = 0.0;
    for (const auto &a : amps) {
        acc += std::norm(a);
    }
    return acc;
}

std::vector<std::size_t> strides_of(const std::vector<Factor> &factors) {
    std::vector<std::size_t> strides(factors.size());
    std::size_t stride = 1;
    for (std::size_t i = factors.size(); i-- > 0;) {
        strides[i] = stride;
        stride *= factors[i].dim;
    }
    return strides;
}

std::size_t digit_of(std::size_t index, std::size_t stride, std::size_t dim) {
    return (index / stride) % dim;
}

// Offsets (in the full state) of every local basis state of the operator's
// factors, in row-major order over those factors.
std::vector<std::size_t> local_offsets(const StateVector &state,
                                       const std::vector<std::string> &labels,
                                       std::vector<std::size_t> &positions) {
    const auto strides = strides_of(state.factors());
    positions.clear();
    std::size_t local_dim = 1;
    for (const auto &label : labels) {
        const auto pos = state.factor_index(label);
        if (std::find(positions.begin(), positions.end(), pos) !=
            positions.end()) {
            throw DomainError("operator lists factor '" + label + "' twice");
        }
        positions.push_back(pos);
        local_dim *= state.factors()[pos].dim;
    }
    std::vector<std::size_t> offsets(local_dim, 0);
    for (std::size_t j = 0; j < local_dim; ++j) {
        std::size_t rest = j;
        std::size_t offset = 0;
        for (std::size_t k = positions.size(); k-- > 0;) {
            const auto dim = state.factors()[positions[k]].dim;
            offset += (rest % dim) * strides[positions[k]];
            rest /= dim;
        }
        offsets[j] = offset;
    }
    return offsets;
}

bool is_base_index(std::size_t index, const std::vector<Factor> &factors,
                   const std::vector<std::size_t> &strides,
                   const std::vector<std::size_t> &positions) {
    return std::all_of(positions.begin(), positions.end(), [&](auto p) {
        return digit_of(index, strides[p], factors[p].dim) == 0;
    });
}

CMatrix identity_matrix(std::size_t dim) {
    return CMatrix::Identity(static_cast<Eigen::Index>(dim),
                             static_cast<Eigen::Index>(dim));
}

void check_projector(const CMatrix &p, const std::string &label) {
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw DomainError("projector '" + label + "' is not Hermitian");
    }
    if ((p * p - p).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw DomainError("projector '" + label + "' is not idempotent");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<Factor> factors,
                         std::vector<Complex> amplitudes)
    : factors_(std::move(factors)), amplitudes_(std::move(amplitudes)) {
    std::set<std::string> seen;
    for (const auto &f : factors_) {
        if (f.dim == 0) {
            throw DomainError("factor '" + f.label + "' has dimension 0");
        }
        if (!seen.insert(f.label).second) {
            throw DomainError("duplicate factor label '" + f.label + "'");
        }
    }
    if (amplitudes_.size() != product_of_dims(factors_)) {
        throw DomainError("amplitude count does not match factor dimensions");
    }
    const double n2 = squared_norm(amplitudes_);
    if (std::abs(std::sqrt(n2) - 1.0) > kNormTolerance) {
        throw DomainError("state is not normalized (norm " +
                          std::to_string(std::sqrt(n2)) + ")");
    }
}

StateVector StateVector::basis(std::string label, std::size_t dim,
                               std::size_t index) {
    if (index >= dim) {
        throw DomainError("basis index out of range for factor '" + label +
                          "'");
    }
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[index] = 1.0;
    return StateVector({{std::move(label), dim}}, std::move(amps));
}

StateVector StateVector::single(std::string label,
                                std::vector<Complex> amplitudes) {
    const auto dim = amplitudes.size();
    return StateVector({{std::move(label), dim}}, std::move(amplitudes));
}

double StateVector::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

bool StateVector::has_factor(const std::string &label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor &f) { return f.label == label; });
}

std::size_t StateVector::factor_index(const std::string &label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].label == label) {
            return i;
        }
    }
    throw DomainError("factor '" + label + "' is not part of the state");
}

Complex StateVector::amplitude(std::span<const std::size_t> digits) const {
    if (digits.size() != factors_.size()) {
        throw DomainError("digit count does not match factor count");
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] >= factors_[i].dim) {
            throw DomainError("digit out of range for factor '" +
                              factors_[i].label + "'");
        }
        index = index * factors_[i].dim + digits[i];
    }
    return amplitudes_[index];
}

// ---------------------------------------------------------------------------
// ProjectiveMeasurement

ProjectiveMeasurement::ProjectiveMeasurement(
    std::vector<Factor> factors, std::vector<MeasurementOutcome> outcomes,
    std::string remainder_label)
    : factors_(std::move(factors)), outcomes_(std::move(outcomes)) {
    const auto dim = product_of_dims(factors_);
    const auto labels = factor_labels();
    std::set<std::string> names;
    CMatrix total = CMatrix::Zero(static_cast<Eigen::Index>(dim),
                                  static_cast<Eigen::Index>(dim));
    for (const auto &o : outcomes_) {
        if (o.projector.factors != labels) {
            throw DomainError("outcome '" + o.label +
                              "' acts on different factors");
        }
        if (static_cast<std::size_t>(o.projector.matrix.rows()) != dim ||
            static_cast<std::size_t>(o.projector.matrix.cols()) != dim) {
            throw DomainError("outcome '" + o.label +
                              "' has the wrong matrix size");
        }
        if (!names.insert(o.label).second) {
            throw DomainError("duplicate outcome label '" + o.label + "'");
        }
        check_projector(o.projector.matrix, o.label);
        total += o.projector.matrix;
    }
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
            const CMatrix prod =
                outcomes_[i].projector.matrix * outcomes_[j].projector.matrix;
            if (prod.cwiseAbs().maxCoeff() > kNormTolerance) {
                throw DomainError("outcomes '" + outcomes_[i].label +
                                  "' and '" + outcomes_[j].label +
                                  "' are not orthogonal");
            }
        }
    }
    if (names.count(remainder_label) != 0) {
        throw DomainError("remainder label collides with an outcome label");
    }
    remainder_ = {std::move(remainder_label),
                  {labels, identity_matrix(dim) - total}};
    check_projector(remainder_.projector.matrix, remainder_.label);
}

ProjectiveMeasurement ProjectiveMeasurement::from_vectors(
    std::vector<Factor> factors,
    const std::vector<std::pair<std::string, CVector>> &vectors,
    std::string remainder_label) {
    std::vector<std::string> labels;
    labels.reserve(factors.size());
    for (const auto &f : factors) {
        labels.push_back(f.label);
    }
    std::vector<MeasurementOutcome> outcomes;
    outcomes.reserve(vectors.size());
    for (const auto &[name, v] : vectors) {
        if (std::abs(v.norm() - 1.0) > kNormTolerance) {
            throw DomainError("measurement vector '" + name +
                              "' is not normalized");
        }
        outcomes.push_back({name, {labels, v * v.adjoint()}});
    }
    return {std::move(factors), std::move(outcomes), std::move(remainder_label)};
}

ProjectiveMeasurement ProjectiveMeasurement::computational(const Factor &factor) {
    std::vector<std::pair<std::string, CVector>> vectors;
    for (std::size_t k = 0; k < factor.dim; ++k) {
        CVector e = CVector::Zero(static_cast<Eigen::Index>(factor.dim));
        e(static_cast<Eigen::Index>(k)) = 1.0;
        vectors.emplace_back(std::to_string(k), e);
    }
    return from_vectors({factor}, vectors);
}

std::vector<std::string> ProjectiveMeasurement::factor_labels() const {
    std::vector<std::string> labels;
    labels.reserve(factors_.size());
    for (const auto &f : factors_) {
        labels.push_back(f.label);
    }
    return labels;
}

bool ProjectiveMeasurement::has_remainder() const {
    return std::abs(remainder_.projector.matrix.trace()) > kNormTolerance;
}

std::vector<MeasurementOutcome>
ProjectiveMeasurement::complete_outcomes() const {
    auto all = outcomes_;
    if (has_remainder()) {
        all.push_back(remainder_);
    }
    return all;
}

const MeasurementOutcome &
ProjectiveMeasurement::outcome(const std::string &label) const {
    for (const auto &o : outcomes_) {
        if (o.label == label) {
            return o;
        }
    }
    if (remainder_.label == label) {
        return remainder_;
    }
    throw DomainError("measurement has no outcome '" + label + "'");
}

// ---------------------------------------------------------------------------
// Operations

LocalOperator identity_on(const StateVector &state,
                          const std::vector<std::string> &factors) {
    std::size_t dim = 1;
    for (const auto &label : factors) {
        dim *= state.factors()[state.factor_index(label)].dim;
    }
    return {factors, identity_matrix(dim)};
}

std::vector<Complex> apply_local(const StateVector &state,
                                 const LocalOperator &op) {
    std::vector<std::size_t> positions;
    const auto offsets = local_offsets(state, op.factors, positions);
    const auto local_dim = static_cast<Eigen::Index>(offsets.size());
    if (op.matrix.rows() != local_dim || op.matrix.cols() != local_dim) {
        throw DomainError("operator size does not match its factors");
    }
    const auto &amps = state.amplitudes();
    const auto strides = strides_of(state.factors());
    std::vector<Complex> out(amps.size(), Complex{0.0, 0.0});
    CVector local(local_dim);
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (!is_base_index(base, state.factors(), strides, positions)) {
            continue;
        }
        for (Eigen::Index j = 0; j < local_dim; ++j) {
            local(j) = amps[base + offsets[static_cast<std::size_t>(j)]];
        }
        const CVector mapped = op.matrix * local;
        for (Eigen::Index j = 0; j < local_dim; ++j) {
            out[base + offsets[static_cast<std::size_t>(j)]] = mapped(j);
        }
    }
    return out;
}

StateVector tensor_product(const StateVector &left, const StateVector &right) {
    auto factors = left.factors();
    for (const auto &f : right.factors()) {
        if (left.has_factor(f.label)) {
            throw DomainError("duplicate factor label '" + f.label + "'");
        }
        factors.push_back(f);
    }
    std::vector<Complex> amps;
    amps.reserve(left.size() * right.size());
    for (const auto &l : left.amplitudes()) {
        for (const auto &r : right.amplitudes()) {
            amps.push_back(l * r);
        }
    }
    return {std::move(factors), std::move(amps)};
}

StateVector apply_observer_unitary(const StateVector &state,
                                   const ProjectiveMeasurement &measurement,
                                   const std::string &observer_factor) {
    const auto obs = state.factor_index(observer_factor);
    for (const auto &f : measurement.factors()) {
        if (f.label == observer_factor) {
            throw DomainError("observer cannot measure its own register");
        }
        const auto &actual = state.factors()[state.factor_index(f.label)];
        if (actual.dim != f.dim) {
            throw DomainError("measured factor '" + f.label +
                              "' has a different dimension in the state");
        }
    }
    const auto outcomes = measurement.complete_outcomes();
    const auto obs_dim = state.factors()[obs].dim;
    if (outcomes.size() > obs_dim) {
        throw DomainError("register '" + observer_factor +
                          "' cannot record every outcome of the measurement");
    }
    const auto strides = strides_of(state.factors());
    const auto obs_stride = strides[obs];
    const auto &amps = state.amplitudes();

    double not_ready = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (digit_of(i, obs_stride, obs_dim) != 0) {
            not_ready += std::norm(amps[i]);
        }
    }
    if (std::sqrt(not_ready) > kNormTolerance) {
        throw DomainError("observer '" + observer_factor +
                          "' is not in its ready state");
    }

    std::vector<Complex> out(amps.size(), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto branch = apply_local(state, outcomes[k].projector);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (digit_of(i, obs_stride, obs_dim) == 0) {
                out[i + k * obs_stride] += branch[i];
            }
        }
    }
    return {state.factors(), std::move(out)};
}

double outcome_probability(const StateVector &state,
                           const LocalOperator &projector) {
    const auto projected = apply_local(state, projector);
    const auto &amps = state.amplitudes();
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::conj(amps[i]) * projected[i];
    }
    const double p = acc.real();
    if (p < -kNormTolerance || p > 1.0 + kNormTolerance ||
        std::abs(acc.imag()) > kNormTolerance) {
        throw DomainError("operator is not a projector on this state");
    }
    return std::clamp(p, 0.0, 1.0);
}

double joint_outcome_probability(const StateVector &state,
                                 const LocalOperator &projector_a,
                                 const LocalOperator &projector_b) {
    for (const auto &la : projector_a.factors) {
        if (std::find(projector_b.factors.begin(), projector_b.factors.end(),
                      la) != projector_b.factors.end()) {
            throw DomainError("joint projectors overlap on factor '" + la +
                              "'");
        }
    }
    // Disjoint supports: Pa and Pb commute and Pa Pb is the joint projector.
    LocalOperator joint{projector_a.factors,
                        Eigen::kroneckerProduct(projector_a.matrix,
                                                projector_b.matrix)};
    joint.factors.insert(joint.factors.end(), projector_b.factors.begin(),
                         projector_b.factors.end());
    return outcome_probability(state, joint);
}

StateVector lueders_collapse(const StateVector &state,
                             const LocalOperator &projector) {
    auto projected = apply_local(state, projector);
    double weight = 0.0;
    for (const auto &a : projected) {
        weight += std::norm(a);
    }
    if (weight <= kNormTolerance) {
        throw DomainError("cannot collapse onto a zero-probability outcome");
    }
    const double scale = 1.0 / std::sqrt(weight);
    for (auto &a : projected) {
        a *= scale;
    }
    return {state.factors(), std::move(projected)};
}

SampledOutcome sample_outcome(const StateVector &state,
                              const ProjectiveMeasurement &measurement,
                              RandomStream &stream) {
    const auto outcomes = measurement.complete_outcomes();
    std::vector<double> probs;
    probs.reserve(outcomes.size());
    for (const auto &o : outcomes) {
        probs.push_back(outcome_probability(state, o.projector));
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    const double u = stream.uniform() * total;
    double cumulative = 0.0;
    std::size_t chosen = outcomes.size();
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (probs[k] <= 0.0) {
            continue;
        }
        cumulative += probs[k];
        chosen = k;
        if (u < cumulative) {
            break;
        }
    }
    if (chosen == outcomes.size()) {
        throw DomainError("measurement has no outcome with positive weight");
    }
    return {outcomes[chosen].label, chosen,
            lueders_collapse(state, outcomes[chosen].projector)};
}

} // namespace wfm
