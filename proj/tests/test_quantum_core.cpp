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
#include <cmath>
#include <complex>
#include <numbers>

#include "catch2/catch_amalgamated.hpp"

#include "wfmemory/quantum_core.hpp"
#include "wfmemory/scenarios.hpp"

using namespace wfm;
using Catch::Matchers::WithinAbs;

namespace {

const Factor kS{"S", 2};
const Factor kF{"F", 2};

StateVector random_qubit(const std::string &label, RandomStream &rng) {
    const double p = rng.uniform();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return StateVector::single(
        label, {std::sqrt(p), std::polar(std::sqrt(1.0 - p), phase)});
}

LocalOperator record(const std::string &label, std::size_t dim,
                     std::size_t k) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim),
                              static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    return {{label}, m};
}

} // namespace

TEST_CASE("tensor product of basis states", "[quantum_core]") {
    const auto s = tensor_product(StateVector::basis("S", 2, 0),
                                  StateVector::basis("F", 2, 0));
    REQUIRE(s.size() == 4);
    CHECK(s.amplitude({0, 0}) == Complex(1.0));
    CHECK(std::abs(s.amplitude({1, 0})) == 0.0);
}

TEST_CASE("tensor product places amplitudes row-major", "[quantum_core]") {
    const Complex alpha = std::polar(std::sqrt(0.3), 0.4);
    const Complex beta = std::polar(std::sqrt(0.7), -1.1);
    const auto s = tensor_product(StateVector::single("S", {alpha, beta}),
                                  StateVector::basis("F", 2, 0));
    CHECK(s.amplitudes()[0] == alpha);
    CHECK(s.amplitudes()[2] == beta);
    CHECK(std::abs(s.amplitudes()[1]) == 0.0);
    CHECK_THAT(s.norm(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("tensor product rejects duplicate labels", "[quantum_core]") {
    CHECK_THROWS_AS(tensor_product(StateVector::basis("S", 2, 0),
                                   StateVector::basis("S", 2, 1)),
                    DomainError);
}

TEST_CASE("state vector validates its invariants", "[quantum_core]") {
    CHECK_THROWS_AS(StateVector({kS}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(StateVector({kS}, {1.0}), DomainError);
    CHECK_THROWS_AS(StateVector({kS, Factor{"S", 2}}, {1.0, 0, 0, 0}),
                    DomainError);
    CHECK_NOTHROW(StateVector({kS}, {1.0, 1e-13}));
}

TEST_CASE("measurement rejects non-projectors", "[quantum_core]") {
    CMatrix half = CMatrix::Identity(2, 2) * 0.5;
    CHECK_THROWS_AS(ProjectiveMeasurement({kS}, {{"x", {{"S"}, half}}}),
                    DomainError);
    CMatrix p0 = CMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    CMatrix plus = CMatrix::Constant(2, 2, 0.5);
    CHECK_THROWS_AS(ProjectiveMeasurement(
                        {kS}, {{"0", {{"S"}, p0}}, {"+", {{"S"}, plus}}}),
                    DomainError);
}

TEST_CASE("remainder completes the identity", "[quantum_core]") {
    const auto m = ProjectiveMeasurement::computational(kS);
    CHECK_FALSE(m.has_remainder());
    CHECK(m.complete_outcomes().size() == 2);

    CVector v(4);
    v << 1.0, 0.0, 0.0, 1.0;
    v /= std::sqrt(2.0);
    const auto w = ProjectiveMeasurement::from_vectors({kS, kF}, {{"1", v}});
    CHECK(w.has_remainder());
    CMatrix sum = w.outcomes()[0].projector.matrix + w.remainder().projector.matrix;
    CHECK((sum - CMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("observer unitary correlates record with system", "[quantum_core]") {
    const Complex alpha = std::polar(std::sqrt(0.25), 0.3);
    const Complex beta = std::polar(std::sqrt(0.75), 2.0);
    const auto t0 = tensor_product(StateVector::single("S", {alpha, beta}),
                                   StateVector::basis("F", 2, 0));
    const auto t1 = apply_observer_unitary(
        t0, ProjectiveMeasurement::computational(kS), "F");
    CHECK(std::abs(t1.amplitude({0, 0}) - alpha) < 1e-15);
    CHECK(std::abs(t1.amplitude({1, 1}) - beta) < 1e-15);
    CHECK(std::abs(t1.amplitude({0, 1})) < 1e-15);
    CHECK(std::abs(t1.amplitude({1, 0})) < 1e-15);
}

TEST_CASE("observer unitary requires a ready observer", "[quantum_core]") {
    const auto t0 = tensor_product(StateVector::basis("S", 2, 0),
                                   StateVector::basis("F", 2, 1));
    CHECK_THROWS_AS(apply_observer_unitary(
                        t0, ProjectiveMeasurement::computational(kS), "F"),
                    DomainError);
}

TEST_CASE("observer unitary requires room for every outcome",
          "[quantum_core]") {
    CVector v(4);
    v << 1.0, 0.0, 0.0, 0.0;
    const auto m = ProjectiveMeasurement::from_vectors({kS, kF}, {{"1", v}});
    const auto t0 = tensor_product(
        tensor_product(StateVector::basis("S", 2, 0),
                       StateVector::basis("F", 2, 0)),
        StateVector::basis("W", 1, 0));
    CHECK_THROWS_AS(apply_observer_unitary(t0, m, "W"), DomainError);
}

TEST_CASE("observer unitary preserves the norm", "[quantum_core]") {
    RandomStream root(11);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto rng = root.child(i);
        const auto t0 = tensor_product(random_qubit("S", rng),
                                       StateVector::basis("F", 2, 0));
        const auto t1 = apply_observer_unitary(
            t0, ProjectiveMeasurement::computational(kS), "F");
        REQUIRE_THAT(t1.norm(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("outcome probability of the first record", "[quantum_core]") {
    const double a2 = 0.36;
    const auto t0 = tensor_product(
        StateVector::single("S", {std::sqrt(a2), std::sqrt(1.0 - a2)}),
        StateVector::basis("F", 2, 0));
    const auto t1 = apply_observer_unitary(
        t0, ProjectiveMeasurement::computational(kS), "F");
    CHECK_THAT(outcome_probability(t1, record("F", 2, 0)), WithinAbs(a2, 1e-12));
    CHECK_THAT(outcome_probability(t1, identity_on(t1, {"F"})),
               WithinAbs(1.0, 1e-12));
    const auto zero = tensor_product(StateVector::basis("S", 2, 0),
                                     StateVector::basis("F", 2, 0));
    CHECK_THAT(outcome_probability(zero, record("S", 2, 1)),
               WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(outcome_probability(t1, record("X", 2, 0)), DomainError);
}

TEST_CASE("complete measurements sum to one", "[quantum_core]") {
    RandomStream root(12);
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = root.child(i);
        const auto c = random_config(rng, true);
        const auto st = extended_states(c)[3];
        const auto w = wigner_measurement(c, factor::system_friend_side);
        double total = 0.0;
        for (const auto &o : w.complete_outcomes()) {
            total += outcome_probability(st, o.projector);
        }
        REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("joint probability marginalizes", "[quantum_core]") {
    RandomStream root(13);
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = root.child(i);
        const auto st = extended_states(random_config(rng, true))[3];
        for (std::size_t f = 0; f < 2; ++f) {
            const double sum =
                joint_outcome_probability(st, record("F", 2, f), record("B", 2, 0)) +
                joint_outcome_probability(st, record("F", 2, f), record("B", 2, 1));
            REQUIRE_THAT(sum, WithinAbs(outcome_probability(st, record("F", 2, f)),
                                        1e-12));
        }
    }
}

TEST_CASE("joint probability before Wigner is |alpha|^2|nu|^2",
          "[quantum_core]") {
    const auto c = ScenarioConfig::extended(0.3, 0.7, 0.4);
    const auto st = extended_states(c)[2];
    const double nu2 = std::pow(std::sin(0.4), 2);
    CHECK_THAT(joint_outcome_probability(st, record("F", 2, 0), record("B", 2, 0)),
               WithinAbs(0.3 * nu2, 1e-12));
}

TEST_CASE("joint probability after Wigner, computational Bob",
          "[quantum_core]") {
    const auto c = ScenarioConfig::extended(0.5, std::numbers::pi / 8, 0.0);
    const auto st = extended_states(c)[3];
    CHECK_THAT(joint_outcome_probability(st, record("F", 2, 0), record("B", 2, 0)),
               WithinAbs(1.0 / 8.0, 1e-12));
}

TEST_CASE("joint probability rejects overlapping factors", "[quantum_core]") {
    const auto st = extended_states(ScenarioConfig::extended(0.5, 0.3, 0.2))[3];
    CHECK_THROWS_AS(
        joint_outcome_probability(st, record("F", 2, 0), record("F", 2, 1)),
        DomainError);
}

TEST_CASE("Lueders collapse", "[quantum_core]") {
    const auto t1 = simple_states(ScenarioConfig::simple(0.4, 0.3))[1];
    const auto c = lueders_collapse(t1, record("F", 2, 0));
    CHECK_THAT(c.norm(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(std::abs(c.amplitude({0, 0, 0})), WithinAbs(1.0, 1e-12));
    CHECK_THAT(outcome_probability(c, record("F", 2, 0)), WithinAbs(1.0, 1e-12));

    const auto same = lueders_collapse(t1, identity_on(t1, {"F"}));
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(std::abs(same.amplitudes()[i] - t1.amplitudes()[i]) < 1e-12);
    }
    const auto definite = simple_states(ScenarioConfig::simple(1.0, 0.3))[1];
    CHECK_THROWS_AS(lueders_collapse(definite, record("F", 2, 1)), DomainError);
}

TEST_CASE("sampling a definite state", "[quantum_core]") {
    RandomStream rng(3);
    const auto s = StateVector::basis("S", 2, 0);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_outcome(s, ProjectiveMeasurement::computational(kS), rng)
                  .label == "0");
    }
}

TEST_CASE("sampling frequencies follow the Born rule", "[quantum_core]") {
    RandomStream rng(4);
    const auto s = StateVector::single("S", {1.0 / std::sqrt(2.0),
                                             1.0 / std::sqrt(2.0)});
    const auto m = ProjectiveMeasurement::computational(kS);
    const int n = 100000;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
        zeros += sample_outcome(s, m, rng).index == 0 ? 1 : 0;
    }
    const double se = std::sqrt(0.25 / n);
    CHECK(std::abs(zeros / static_cast<double>(n) - 0.5) < 5.0 * se);
}

TEST_CASE("sampling is reproducible per substream", "[quantum_core]") {
    const auto s = StateVector::single("S", {std::sqrt(0.3), std::sqrt(0.7)});
    const auto m = ProjectiveMeasurement::computational(kS);
    RandomStream a(9, 5);
    RandomStream b(9, 5);
    for (int i = 0; i < 500; ++i) {
        REQUIRE(sample_outcome(s, m, a).index == sample_outcome(s, m, b).index);
    }
}
