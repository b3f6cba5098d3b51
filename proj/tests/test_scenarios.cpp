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

#include "wfmemory/scenarios.hpp"

using namespace wfm;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;
const double kS2 = std::sqrt(2.0);

// Branch-amplitude oracle, written out by hand. After the friend's (and
// Bob's) measurement the system-friend part is sum_i c_i |i,i>; Wigner then
// projects onto |W1> = a|00> + b|11> and |W2> = b*|00> - a*|11>.
struct Branches {
    std::complex<double> c0, c1;
};

std::array<double, 2> wigner_records(const ScenarioConfig &cfg, Branches br) {
    const auto a = cfg.wigner_a.value();
    const auto b = cfg.wigner_b.value();
    const auto w1 = std::conj(a) * br.c0 + std::conj(b) * br.c1;
    const auto w2 = b * br.c0 - a * br.c1;
    const double a2 = std::norm(a);
    const double b2 = std::norm(b);
    return {a2 * std::norm(w1) + b2 * std::norm(w2),
            b2 * std::norm(w1) + a2 * std::norm(w2)};
}

// Bob outcome m selects branch amplitudes <B=m| on the second system qubit
// of alpha|0,1> + beta|1,0>, with <B=0| = mu*<0| + nu*<1| and
// <B=1| = nu<0| - mu<1|.
Branches bob_branch(const ScenarioConfig &cfg, int m) {
    const auto al = cfg.alpha.value();
    const auto be = cfg.beta.value();
    const auto mu = cfg.bob_mu->value();
    const auto nu = cfg.bob_nu->value();
    if (m == 0) {
        return {al * std::conj(nu), be * std::conj(mu)};
    }
    return {-al * mu, be * nu};
}

JointTable oracle_t3(const ScenarioConfig &cfg) {
    JointTable t;
    t.time = Time::t3;
    for (int m = 0; m < 2; ++m) {
        const auto r = wigner_records(cfg, bob_branch(cfg, m));
        t.p[0][static_cast<std::size_t>(m)] = r[0];
        t.p[1][static_cast<std::size_t>(m)] = r[1];
    }
    return t;
}

JointTable oracle_t2(const ScenarioConfig &cfg) {
    JointTable t;
    for (int m = 0; m < 2; ++m) {
        const auto br = bob_branch(cfg, m);
        t.p[0][static_cast<std::size_t>(m)] = std::norm(br.c0);
        t.p[1][static_cast<std::size_t>(m)] = std::norm(br.c1);
    }
    return t;
}

} // namespace

TEST_CASE("config validation", "[scenarios]") {
    ScenarioConfig c;
    c.alpha = {0.9, 0.0};
    c.beta = {0.1, 0.0};
    CHECK_THROWS_AS(c.validate(false), DomainError);
    CHECK_NOTHROW(ScenarioConfig::simple(0.5, 0.3).validate(false));
    CHECK_THROWS_AS(ScenarioConfig::simple(0.5, 0.3).validate(true),
                    DomainError);
}

TEST_CASE("simple states", "[scenarios]") {
    const auto definite = simple_states(ScenarioConfig::simple(1.0, 0.4));
    CHECK_THAT(std::abs(definite[1].amplitude({0, 0, 0})), WithinAbs(1.0, 1e-15));

    RandomStream root(21);
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = root.child(i);
        const auto c = random_config(rng, false);
        const auto st = simple_states(c);
        for (const auto &s : st) {
            REQUIRE_THAT(s.norm(), WithinAbs(1.0, 1e-12));
        }
        // Wigner record "1" is basis 0 of W: weight |alpha a* + beta b*|^2.
        const double w1 =
            std::norm(c.alpha.value() * std::conj(c.wigner_a.value()) +
                      c.beta.value() * std::conj(c.wigner_b.value()));
        CMatrix p = CMatrix::Zero(3, 3);
        p(0, 0) = 1.0;
        REQUIRE_THAT(outcome_probability(st[2], {{"W"}, p}), WithinAbs(w1, 1e-12));
    }
}

TEST_CASE("simple friend marginals", "[scenarios]") {
    const auto d1 = simple_friend_marginal(ScenarioConfig::simple(1.0, 0.3),
                                           Time::t1);
    CHECK(d1.p[0] == 1.0);
    CHECK(d1.p[1] == 0.0);

    // a = 1, b = 0: Wigner measures in the record basis.
    auto c = ScenarioConfig::simple(0.3, kPi / 2);
    const auto t1 = simple_friend_marginal(c, Time::t1);
    const auto t2 = simple_friend_marginal(c, Time::t2);
    CHECK_THAT(t2.p[0], WithinAbs(t1.p[0], 1e-12));

    const auto m = simple_friend_marginal(ScenarioConfig::simple(0.5, kPi / 8),
                                          Time::t2);
    CHECK_THAT(m.p[0], WithinAbs(0.25, 1e-12));
    CHECK_THAT(m.p[1], WithinAbs(0.75, 1e-12));
    CHECK_THAT(derived_interference(ScenarioConfig::simple(0.5, kPi / 8)).chi,
               WithinAbs(-1.0 / 8.0, 1e-12));
}

TEST_CASE("simple marginals match the branch oracle", "[scenarios]") {
    RandomStream root(22);
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto rng = root.child(i);
        const auto c = random_config(rng, false);
        const auto o = wigner_records(c, {c.alpha.value(), c.beta.value()});
        const auto m = simple_friend_marginal(c, Time::t2);
        REQUIRE_THAT(m.p[0], WithinAbs(o[0], 1e-12));
        REQUIRE_THAT(m.p[1], WithinAbs(o[1], 1e-12));
    }
}

TEST_CASE("extended states", "[scenarios]") {
    const auto st = extended_states(ScenarioConfig::extended(0.5, 0.3, 0.0));
    // mu = 1, nu = 0: no (f=0, B=0) branch. Factors S1 S2 F B W.
    for (std::size_t s1 = 0; s1 < 2; ++s1) {
        for (std::size_t s2 = 0; s2 < 2; ++s2) {
            CHECK(std::abs(st[2].amplitude({s1, s2, 0, 0, 0})) < 1e-15);
        }
    }
    RandomStream root(23);
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = root.child(i);
        for (const auto &s : extended_states(random_config(rng, true))) {
            REQUIRE_THAT(s.norm(), WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("Wigner-1, Bob-0 branch weight", "[scenarios]") {
    ScenarioConfig c = ScenarioConfig::simple(0.5, kPi / 8);
    c.bob_mu = PolarComplex{1.0 / std::sqrt(3.0), 0.0};
    c.bob_nu = PolarComplex{std::sqrt(2.0 / 3.0), 0.0};
    const auto st = extended_states(c)[3];
    const auto expected =
        std::norm(c.alpha.value() * std::conj(c.bob_nu->value()) *
                      std::conj(c.wigner_a.value()) +
                  c.beta.value() * std::conj(c.bob_mu->value()) *
                      std::conj(c.wigner_b.value()));
    CMatrix w = CMatrix::Zero(3, 3);
    w(0, 0) = 1.0;
    CMatrix b = CMatrix::Zero(2, 2);
    b(0, 0) = 1.0;
    CHECK_THAT(joint_outcome_probability(st, {{"W"}, w}, {{"B"}, b}),
               WithinAbs(expected, 1e-12));
}

TEST_CASE("extended marginals", "[scenarios]") {
    const auto c = ScenarioConfig::extended(0.37, 0.8, 0.2);
    const auto f2 = extended_marginals(c, Party::wigners_friend, Time::t2);
    CHECK_THAT(f2.p[0], WithinAbs(0.37, 1e-12));

    ScenarioConfig tilt = ScenarioConfig::simple(0.5, kPi / 8);
    tilt.bob_mu = PolarComplex{1.0 / std::sqrt(3.0), 0.0};
    tilt.bob_nu = PolarComplex{std::sqrt(2.0 / 3.0), 0.0};
    const auto b3 = extended_marginals(tilt, Party::bob, Time::t3);
    CHECK_THAT(b3.p[0], WithinAbs(0.5, 1e-12));
    const auto f3 = extended_marginals(tilt, Party::wigners_friend, Time::t3);
    CHECK_THAT(f3.p[0], WithinAbs(0.5, 1e-12));

    CHECK_THROWS_AS(extended_marginals(c, Party::bob, Time::t1), DomainError);
}

TEST_CASE("protocol joint tables", "[scenarios]") {
    const auto comp = ScenarioConfig::extended(0.5, kPi / 8, 0.0);
    const auto t2 = extended_joint_table(comp, Time::t2);
    CHECK_THAT(t2.p[0][0], WithinAbs(0.0, 1e-12));
    CHECK_THAT(t2.p[0][1], WithinAbs(0.5, 1e-12));
    const auto t3 = extended_joint_table(comp, Time::t3);
    CHECK_THAT(t3.p[0][0], WithinAbs(1.0 / 8, 1e-12));
    CHECK_THAT(t3.p[0][1], WithinAbs(3.0 / 8, 1e-12));
    CHECK_THAT(t3.p[1][0], WithinAbs(3.0 / 8, 1e-12));
    CHECK_THAT(t3.p[1][1], WithinAbs(1.0 / 8, 1e-12));

    ScenarioConfig tilt = ScenarioConfig::simple(0.5, kPi / 8);
    tilt.bob_mu = PolarComplex{1.0 / std::sqrt(3.0), 0.0};
    tilt.bob_nu = PolarComplex{std::sqrt(2.0 / 3.0), 0.0};
    const auto tt = extended_joint_table(tilt, Time::t3);
    CHECK_THAT(tt.p[0][0], WithinAbs((7 - 2 * kS2) / 24, 1e-12));
    CHECK_THAT(tt.p[0][1], WithinAbs((5 + 2 * kS2) / 24, 1e-12));
    CHECK_THAT(tt.p[1][0], WithinAbs((5 + 2 * kS2) / 24, 1e-12));
    CHECK_THAT(tt.p[1][1], WithinAbs((7 - 2 * kS2) / 24, 1e-12));
}

TEST_CASE("joint tables match the branch oracle", "[scenarios]") {
    RandomStream root(24);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto rng = root.child(i);
        const auto c = random_config(rng, true);
        REQUIRE(extended_joint_table(c, Time::t2).max_abs_difference(
                    oracle_t2(c)) < 1e-12);
        REQUIRE(extended_joint_table(c, Time::t3).max_abs_difference(
                    oracle_t3(c)) < 1e-12);
    }
}

TEST_CASE("scenario invariants", "[scenarios]") {
    RandomStream root(25);
    for (std::uint64_t i = 0; i < 300; ++i) {
        auto rng = root.child(i);
        const auto c = random_config(rng, true);
        const auto st = extended_states(c);
        REQUIRE_THAT(evaluate_remainder_weight(st[3]), WithinAbs(0.0, 1e-12));
        const auto simple = random_config(rng, false);
        REQUIRE_THAT(evaluate_remainder_weight(simple_states(simple)[2]),
                     WithinAbs(0.0, 1e-12));
        for (auto t : {Time::t2, Time::t3}) {
            const auto table = extended_joint_table(c, t);
            const auto fm = extended_marginals(c, Party::wigners_friend, t);
            const auto bm = extended_marginals(c, Party::bob, t);
            REQUIRE_THAT(table.total(), WithinAbs(1.0, 1e-12));
            REQUIRE_THAT(table.friend_marginal()[0], WithinAbs(fm.p[0], 1e-12));
            REQUIRE_THAT(table.bob_marginal()[0], WithinAbs(bm.p[0], 1e-12));
        }
        const auto f1 = extended_marginals(c, Party::wigners_friend, Time::t1);
        const auto f2 = extended_marginals(c, Party::wigners_friend, Time::t2);
        REQUIRE_THAT(f1.p[0], WithinAbs(f2.p[0], 1e-12));
    }
}

TEST_CASE("sampled arrangements converge", "[scenarios]") {
    const auto c = ScenarioConfig::extended(0.5, kPi / 8, 0.0);
    const std::size_t n = 100000;
    for (auto arr : {Arrangement::ask_before_wigner, Arrangement::wigner_then_ask}) {
        const auto emp = sample_arrangement(c, arr, n, RandomStream(26));
        const auto ref = extended_joint_table(
            c, arr == Arrangement::ask_before_wigner ? Time::t2 : Time::t3);
        CHECK_THAT(emp.table.total(), WithinAbs(1.0, 1e-12));
        for (int f = 0; f < 2; ++f) {
            for (int b = 0; b < 2; ++b) {
                const double p = ref.p[f][b];
                const double se = std::sqrt(p * (1 - p) / n);
                CHECK(std::abs(emp.table.p[f][b] - p) <= 5 * se + 1e-12);
            }
        }
    }
    const auto one = sample_arrangement(c, Arrangement::wigner_then_ask, 1,
                                        RandomStream(27));
    std::size_t cells = 0;
    for (const auto &row : one.counts) {
        for (auto k : row) {
            cells += k;
        }
    }
    CHECK(cells == 1);
}
