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
#include "wfmemory/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace wfm {

namespace {

void check_pair(const PolarComplex &x, const PolarComplex &y,
                const std::string &name) {
    for (const auto *z : {&x, &y}) {
        if (!std::isfinite(z->magnitude) || !std::isfinite(z->phase) ||
            z->magnitude < 0.0) {
            throw DomainError(name + ": magnitudes must be finite and >= 0");
        }
    }
    if (std::abs(x.squared() + y.squared() - 1.0) > kNormTolerance) {
        throw DomainError(name + ": squared magnitudes must sum to 1");
    }
}

// |a|^4 + |b|^4, |a|^2|b|^2 and |a|^3|b| - |a||b|^3.
struct WignerWeights {
    double quartic;
    double cross;
    double odd;
};

WignerWeights wigner_weights(const ScenarioConfig &c) {
    const double a = c.wigner_a.magnitude;
    const double b = c.wigner_b.magnitude;
    return {a * a * a * a + b * b * b * b, a * a * b * b,
            a * a * a * b - a * b * b * b};
}

Factor qubit(const std::string &label) { return {label, 2}; }

LocalOperator record_projector(const std::string &label, std::size_t dim,
                               std::size_t value) {
    CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(dim),
                              static_cast<Eigen::Index>(dim));
    p(static_cast<Eigen::Index>(value), static_cast<Eigen::Index>(value)) = 1.0;
    return {{label}, p};
}

void require_extended_time(Time time, std::initializer_list<Time> allowed,
                           const std::string &what) {
    for (auto t : allowed) {
        if (t == time) {
            return;
        }
    }
    throw DomainError(what + " is not defined at " + to_string(time));
}

} // namespace

Complex PolarComplex::value() const { return std::polar(magnitude, phase); }

void ScenarioConfig::validate(bool require_bob) const {
    check_pair(alpha, beta, "initial amplitudes (alpha, beta)");
    check_pair(wigner_a, wigner_b, "Wigner setting (a, b)");
    if (bob_mu.has_value() != bob_nu.has_value()) {
        throw DomainError("Bob setting needs both mu and nu");
    }
    if (is_extended()) {
        check_pair(*bob_mu, *bob_nu, "Bob setting (mu, nu)");
    } else if (require_bob) {
        throw DomainError("extended scenario requires Bob's setting");
    }
}

ScenarioConfig ScenarioConfig::simple(double alpha2, double wigner_angle) {
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) {
        throw DomainError("|alpha|^2 must lie in [0, 1]");
    }
    ScenarioConfig c;
    c.alpha = {std::sqrt(alpha2), 0.0};
    c.beta = {std::sqrt(1.0 - alpha2), 0.0};
    c.wigner_a = {std::abs(std::sin(wigner_angle)),
                  std::sin(wigner_angle) < 0 ? std::numbers::pi : 0.0};
    c.wigner_b = {std::abs(std::cos(wigner_angle)),
                  std::cos(wigner_angle) < 0 ? std::numbers::pi : 0.0};
    return c;
}

ScenarioConfig ScenarioConfig::extended(double alpha2, double wigner_angle,
                                        double bob_angle) {
    auto c = simple(alpha2, wigner_angle);
    c.bob_mu = PolarComplex{std::abs(std::cos(bob_angle)),
                            std::cos(bob_angle) < 0 ? std::numbers::pi : 0.0};
    c.bob_nu = PolarComplex{std::abs(std::sin(bob_angle)),
                            std::sin(bob_angle) < 0 ? std::numbers::pi : 0.0};
    return c;
}

DerivedInterference derived_interference(const ScenarioConfig &c) {
    const auto w = wigner_weights(c);
    DerivedInterference d;
    d.theta = c.alpha.phase - c.beta.phase + c.wigner_b.phase -
              c.wigner_a.phase;
    d.chi = c.alpha.magnitude * c.beta.magnitude * w.odd * std::cos(d.theta);
    if (c.is_extended()) {
        d.vartheta = d.theta + c.bob_mu->phase - c.bob_nu->phase;
        d.xi = w.odd * c.alpha.magnitude * c.beta.magnitude *
               c.bob_mu->magnitude * c.bob_nu->magnitude *
               std::cos(d.vartheta);
    }
    return d;
}

std::string to_string(Time t) {
    return "t" + std::to_string(static_cast<int>(t));
}

std::string to_string(Party p) {
    return p == Party::bob ? "bob" : "friend";
}

double JointTable::total() const {
    return p[0][0] + p[0][1] + p[1][0] + p[1][1];
}

std::array<double, 2> JointTable::friend_marginal() const {
    return {p[0][0] + p[0][1], p[1][0] + p[1][1]};
}

std::array<double, 2> JointTable::bob_marginal() const {
    return {p[0][0] + p[1][0], p[0][1] + p[1][1]};
}

double JointTable::max_abs_difference(const JointTable &other) const {
    double worst = 0.0;
    for (int f = 0; f < 2; ++f) {
        for (int b = 0; b < 2; ++b) {
            worst = std::max(worst, std::abs(p[f][b] - other.p[f][b]));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Measurements

ProjectiveMeasurement friend_measurement(const std::string &system_label) {
    return ProjectiveMeasurement::computational(qubit(system_label));
}

ProjectiveMeasurement bob_measurement(const ScenarioConfig &config) {
    if (!config.is_extended()) {
        throw DomainError("Bob's measurement needs mu and nu");
    }
    const Complex mu = config.bob_mu->value();
    const Complex nu = config.bob_nu->value();
    CVector b0(2);
    b0 << mu, nu;
    CVector b1(2);
    b1 << std::conj(nu), -std::conj(mu);
    return ProjectiveMeasurement::from_vectors(
        {qubit(factor::system_bob_side)}, {{"0", b0}, {"1", b1}});
}

ProjectiveMeasurement wigner_measurement(const ScenarioConfig &config,
                                         const std::string &system_label) {
    const Complex a = config.wigner_a.value();
    const Complex b = config.wigner_b.value();
    // Basis |00>, |01>, |10>, |11> of (system, friend).
    CVector w1 = CVector::Zero(4);
    w1(0) = a;
    w1(3) = b;
    CVector w2 = CVector::Zero(4);
    w2(0) = std::conj(b);
    w2(3) = -std::conj(a);
    return ProjectiveMeasurement::from_vectors(
        {qubit(system_label), qubit(factor::friend_memory)},
        {{"1", w1}, {"2", w2}}, "perp");
}

// ---------------------------------------------------------------------------
// Simple scenario

std::vector<StateVector> simple_states(const ScenarioConfig &config) {
    config.validate(false);
    const auto system = StateVector::single(
        factor::system, {config.alpha.value(), config.beta.value()});
    auto t0 = tensor_product(
        tensor_product(system, StateVector::basis(factor::friend_memory, 2, 0)),
        StateVector::basis(factor::wigner_memory, kWignerRecordDim, 0));
    auto t1 = apply_observer_unitary(t0, friend_measurement(factor::system),
                                     factor::friend_memory);
    auto t2 = apply_observer_unitary(
        t1, wigner_measurement(config, factor::system), factor::wigner_memory);
    return {std::move(t0), std::move(t1), std::move(t2)};
}

OutcomeDistribution simple_friend_marginal(const ScenarioConfig &config,
                                           Time time) {
    config.validate(false);
    const double A = config.alpha.squared();
    const double B = config.beta.squared();
    OutcomeDistribution d{Party::wigners_friend, time, {}};
    if (time == Time::t1) {
        d.p = {A, B};
        return d;
    }
    if (time != Time::t2) {
        throw DomainError("simple friend marginal is not defined at " +
                          to_string(time));
    }
    const auto w = wigner_weights(config);
    const double chi = derived_interference(config).chi;
    d.p = {A * w.quartic + 2.0 * B * w.cross + 2.0 * chi,
           B * w.quartic + 2.0 * A * w.cross - 2.0 * chi};
    return d;
}

// ---------------------------------------------------------------------------
// Extended scenario

std::vector<StateVector> extended_states(const ScenarioConfig &config) {
    config.validate(true);
    // alpha|0,1> + beta|1,0> on (S1, S2).
    const auto pair = StateVector(
        {qubit(factor::system_friend_side), qubit(factor::system_bob_side)},
        {0.0, config.alpha.value(), config.beta.value(), 0.0});
    auto t0 = tensor_product(
        tensor_product(
            tensor_product(pair,
                           StateVector::basis(factor::friend_memory, 2, 0)),
            StateVector::basis(factor::bob_memory, 2, 0)),
        StateVector::basis(factor::wigner_memory, kWignerRecordDim, 0));
    auto t1 = apply_observer_unitary(
        t0, friend_measurement(factor::system_friend_side),
        factor::friend_memory);
    auto t2 =
        apply_observer_unitary(t1, bob_measurement(config), factor::bob_memory);
    auto t3 = apply_observer_unitary(
        t2, wigner_measurement(config, factor::system_friend_side),
        factor::wigner_memory);
    return {std::move(t0), std::move(t1), std::move(t2), std::move(t3)};
}

OutcomeDistribution extended_marginals(const ScenarioConfig &config,
                                       Party party, Time time) {
    config.validate(true);
    const double A = config.alpha.squared();
    const double B = config.beta.squared();
    const double M = config.bob_mu->squared();
    const double N = config.bob_nu->squared();
    OutcomeDistribution d{party, time, {}};
    if (party == Party::bob) {
        if (time == Time::t0 || time == Time::t1) {
            throw DomainError("Bob has not measured at " + to_string(time));
        }
        require_extended_time(time, {Time::t2, Time::t3}, "Bob's record");
        d.p = {A * N + B * M, A * M + B * N};
        return d;
    }
    require_extended_time(time, {Time::t1, Time::t2, Time::t3},
                          "the friend's record");
    if (time == Time::t3) {
        const auto w = wigner_weights(config);
        d.p = {A * w.quartic + 2.0 * B * w.cross,
               B * w.quartic + 2.0 * A * w.cross};
    } else {
        d.p = {A, B};
    }
    return d;
}

JointTable extended_joint_table(const ScenarioConfig &config, Time time) {
    config.validate(true);
    require_extended_time(time, {Time::t2, Time::t3}, "the joint table");
    const double A = config.alpha.squared();
    const double B = config.beta.squared();
    const double M = config.bob_mu->squared();
    const double N = config.bob_nu->squared();
    JointTable t{time, {}};
    if (time == Time::t2) {
        t.p = {{{A * N, A * M}, {B * M, B * N}}};
        return t;
    }
    const auto w = wigner_weights(config);
    const double xi = derived_interference(config).xi;
    t.p[0][0] = A * N * w.quartic + 2.0 * B * M * w.cross + 2.0 * xi;
    t.p[0][1] = A * M * w.quartic + 2.0 * B * N * w.cross - 2.0 * xi;
    t.p[1][0] = B * M * w.quartic + 2.0 * A * N * w.cross - 2.0 * xi;
    t.p[1][1] = B * N * w.quartic + 2.0 * A * M * w.cross + 2.0 * xi;
    return t;
}

// ---------------------------------------------------------------------------
// Projector evaluation

OutcomeDistribution evaluate_marginal(const StateVector &state, Party party,
                                      Time time) {
    const auto &label =
        party == Party::bob ? factor::bob_memory : factor::friend_memory;
    OutcomeDistribution d{party, time, {}};
    for (std::size_t k = 0; k < 2; ++k) {
        d.p[k] = outcome_probability(state, record_projector(label, 2, k));
    }
    return d;
}

JointTable evaluate_joint_table(const StateVector &state, Time time) {
    JointTable t{time, {}};
    for (std::size_t f = 0; f < 2; ++f) {
        for (std::size_t b = 0; b < 2; ++b) {
            t.p[f][b] = joint_outcome_probability(
                state, record_projector(factor::friend_memory, 2, f),
                record_projector(factor::bob_memory, 2, b));
        }
    }
    return t;
}

double evaluate_remainder_weight(const StateVector &state) {
    return outcome_probability(
        state, record_projector(factor::wigner_memory, kWignerRecordDim, 2));
}

// ---------------------------------------------------------------------------
// Sampling

EmpiricalTable sample_arrangement(const ScenarioConfig &config,
                                  Arrangement arrangement, std::size_t runs,
                                  const RandomStream &stream, Execution exec) {
    if (runs == 0) {
        throw DomainError("sample_arrangement needs at least one run");
    }
    const auto states = extended_states(config);
    const auto &source = arrangement == Arrangement::ask_before_wigner
                             ? states[2]
                             : states[3];
    const auto ask_friend =
        ProjectiveMeasurement::computational(qubit(factor::friend_memory));
    const auto ask_bob =
        ProjectiveMeasurement::computational(qubit(factor::bob_memory));

    const auto blocks = block_count(runs);
    std::vector<std::array<std::array<std::size_t, 2>, 2>> partial(blocks);
    for_each_index(blocks, exec, [&](std::size_t k) {
        auto rng = stream.child(k);
        auto &counts = partial[k];
        counts = {};
        const auto begin = k * kSampleBlock;
        const auto end = std::min(runs, begin + kSampleBlock);
        for (auto i = begin; i < end; ++i) {
            const auto f = sample_outcome(source, ask_friend, rng);
            const auto b = sample_outcome(f.state, ask_bob, rng);
            ++counts[f.index][b.index];
        }
    });

    EmpiricalTable out;
    out.runs = runs;
    out.table.time =
        arrangement == Arrangement::ask_before_wigner ? Time::t2 : Time::t3;
    for (const auto &c : partial) {
        for (int f = 0; f < 2; ++f) {
            for (int b = 0; b < 2; ++b) {
                out.counts[f][b] += c[f][b];
            }
        }
    }
    for (int f = 0; f < 2; ++f) {
        for (int b = 0; b < 2; ++b) {
            out.table.p[f][b] = static_cast<double>(out.counts[f][b]) /
                                static_cast<double>(runs);
        }
    }
    return out;
}

ScenarioConfig random_config(RandomStream &stream, bool extended) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto draw_pair = [&](PolarComplex &x, PolarComplex &y) {
        const double x2 = stream.uniform();
        x = {std::sqrt(x2), two_pi * stream.uniform()};
        y = {std::sqrt(1.0 - x2), two_pi * stream.uniform()};
    };
    ScenarioConfig c;
    draw_pair(c.alpha, c.beta);
    draw_pair(c.wigner_a, c.wigner_b);
    if (extended) {
        PolarComplex mu;
        PolarComplex nu;
        draw_pair(mu, nu);
        c.bob_mu = mu;
        c.bob_nu = nu;
    }
    return c;
}

} // namespace wfm
