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

#include "catch2/catch_amalgamated.hpp"

#include "wfmemory/protocol.hpp"

using namespace wfm;
using Catch::Matchers::WithinAbs;

namespace {

const double kTiltQ = 0.25 + 1.0 / std::sqrt(2.0);

std::vector<int> alternating(std::size_t n) {
    std::vector<int> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = static_cast<int>(i % 2);
    }
    return m;
}

} // namespace

TEST_CASE("theoretical tables, computational basis", "[protocol]") {
    const auto t = theoretical_protocol_tables(BobSetting::computational);
    CHECK_THAT(t.q, WithinAbs(0.25, 1e-12));
    CHECK_THAT(t.t2.p[0][1], WithinAbs(0.5, 1e-12));
    CHECK_THAT(t.t3.p[1][1], WithinAbs(1.0 / 8, 1e-12));
    CHECK_THAT(t.t3.friend_marginal()[0], WithinAbs(0.5, 1e-12));
}

TEST_CASE("theoretical tables, tilted basis", "[protocol]") {
    const auto t = theoretical_protocol_tables(BobSetting::tilted);
    CHECK_THAT(t.q, WithinAbs(kTiltQ, 1e-12));
    CHECK_THAT(t.t2.p[0][0], WithinAbs(1.0 / 3, 1e-12));
    CHECK_THAT(t.t2.p[0][1], WithinAbs(1.0 / 6, 1e-12));
    CHECK_THAT(t.t3.p[0][0], WithinAbs((7 - 2 * std::sqrt(2.0)) / 24, 1e-12));
    CHECK_THAT(t.t3.friend_marginal()[0], WithinAbs(0.5, 1e-12));
}

TEST_CASE("config validation", "[protocol]") {
    ProtocolConfig c;
    CHECK_THROWS_AS(run_protocol(c), DomainError);
    c.bob_message = {0, 2};
    CHECK_THROWS_AS(run_protocol(c), DomainError);
    c.bob_message = {0};
    c.n_registers = 0;
    CHECK_THROWS_AS(run_protocol(c), DomainError);
}

TEST_CASE("flip fractions concentrate on the setting's q", "[protocol]") {
    ProtocolConfig c;
    c.n_registers = 1000;
    c.bob_message = alternating(100);
    const auto r = run_protocol(c);
    REQUIRE(r.repetitions.size() == 100);
    double sum[2] = {0, 0};
    for (const auto &rep : r.repetitions) {
        REQUIRE(rep.flip_fraction ==
                static_cast<double>(rep.flip_count) / 1000.0);
        sum[rep.bit_sent] += rep.flip_fraction;
    }
    const double m0 = sum[0] / 50;
    const double m1 = sum[1] / 50;
    CHECK(std::abs(m0 - 0.25) < 5 * 0.0137 / std::sqrt(50.0));
    CHECK(std::abs(m1 - kTiltQ) < 5 * 0.0064 / std::sqrt(50.0));
    CHECK(r.bit_errors == 0);
    CHECK(channel_error_rate(r, c.bob_message) == 0.0);
}

TEST_CASE("single register verdict is its flip indicator", "[protocol]") {
    ProtocolConfig c;
    c.n_registers = 1;
    c.bob_message = alternating(64);
    const auto r = run_protocol(c);
    for (const auto &rep : r.repetitions) {
        REQUIRE(rep.verdict != Verdict::tie);
        REQUIRE(rep.decoded_bit == static_cast<int>(rep.flip_count));
    }
}

TEST_CASE("ties are broken by the stream", "[protocol]") {
    ProtocolConfig c;
    c.n_registers = 2;
    c.bob_message = alternating(400);
    const auto r = run_protocol(c);
    int ties = 0;
    int ones = 0;
    for (const auto &rep : r.repetitions) {
        if (rep.verdict == Verdict::tie) {
            ++ties;
            ones += rep.decoded_bit;
        }
    }
    REQUIRE(ties > 20);
    CHECK(ones > 0);
    CHECK(ones < ties);
}

TEST_CASE("protocol is deterministic", "[protocol]") {
    ProtocolConfig c;
    c.n_registers = 200;
    c.bob_message = random_message(30, 5);
    c.seed = 77;
    const auto a = run_protocol(c);
    const auto b = run_protocol(c);
    for (std::size_t i = 0; i < a.repetitions.size(); ++i) {
        REQUIRE(a.repetitions[i].flip_count == b.repetitions[i].flip_count);
        REQUIRE(a.decoded[i] == b.decoded[i]);
    }
}

TEST_CASE("channel error rate", "[protocol]") {
    ProtocolResult r;
    r.decoded = {0, 1, 1, 0};
    CHECK(channel_error_rate(r, {0, 1, 1, 0}) == 0.0);
    CHECK(channel_error_rate(r, {1, 0, 0, 1}) == 1.0);
    CHECK_THROWS_AS(channel_error_rate(r, {0, 1}), DomainError);
}

TEST_CASE("hidden-variable tables converge", "[protocol]") {
    const std::size_t n = 100000;
    for (auto s : {BobSetting::computational, BobSetting::tilted}) {
        const auto rep =
            hidden_variable_consistency(protocol_config(s), n, RandomStream(41));
        const auto t = theoretical_protocol_tables(s);
        for (int f = 0; f < 2; ++f) {
            for (int b = 0; b < 2; ++b) {
                const double p3 = t.t3.p[f][b];
                const double p2 = t.t2.p[f][b];
                CHECK(std::abs(rep.empirical_t3.table.p[f][b] - p3) <=
                      5 * standard_error(p3, n) + 1e-12);
                CHECK(std::abs(rep.empirical_t2.table.p[f][b] - p2) <=
                      5 * standard_error(p2, n) + 1e-12);
            }
        }
        CHECK(rep.max_deviation < 0.008);
    }
}

TEST_CASE("zero-flip model leaves the table unchanged", "[protocol]") {
    const auto cfg = protocol_config(BobSetting::tilted);
    HiddenVariableModel model{extended_joint_table(cfg, Time::t2), {}};
    const auto rep =
        hidden_variable_consistency(model, model.pre, 50000, RandomStream(42));
    for (int f = 0; f < 2; ++f) {
        for (int b = 0; b < 2; ++b) {
            REQUIRE(rep.empirical_t3.counts[f][b] == rep.empirical_t2.counts[f][b]);
        }
    }
}

TEST_CASE("friend marginal carries no signal", "[protocol]") {
    ProtocolConfig c;
    c.n_registers = 1000;
    c.bob_message = alternating(200);
    const auto r = run_protocol(c);
    double zeros[2] = {0, 0};
    for (const auto &rep : r.repetitions) {
        zeros[rep.bit_sent] += static_cast<double>(rep.friend_zero_after);
    }
    const double n = 100 * 1000.0;
    const double se = std::sqrt(0.25 * 2 / n);
    CHECK(std::abs(zeros[0] / n - zeros[1] / n) < 5 * se);
}
