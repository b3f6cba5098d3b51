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
#include "wfmemory/protocol.hpp"

#include <cmath>

namespace wfm {

namespace {

struct RecordPair {
    std::size_t friend_record;
    std::size_t bob_record;
};

RecordPair draw_pre(const JointTable &pre, RandomStream &rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    RecordPair last{1, 1};
    for (std::size_t f = 0; f < 2; ++f) {
        for (std::size_t b = 0; b < 2; ++b) {
            if (pre.p[f][b] <= 0.0) {
                continue;
            }
            cumulative += pre.p[f][b];
            last = {f, b};
            if (u < cumulative) {
                return last;
            }
        }
    }
    return last;
}

EmpiricalTable finish(const std::array<std::array<std::size_t, 2>, 2> &counts,
                      std::size_t runs, Time time) {
    EmpiricalTable t;
    t.counts = counts;
    t.runs = runs;
    t.table.time = time;
    for (int f = 0; f < 2; ++f) {
        for (int b = 0; b < 2; ++b) {
            t.table.p[f][b] =
                static_cast<double>(counts[f][b]) / static_cast<double>(runs);
        }
    }
    return t;
}

} // namespace

ScenarioConfig protocol_config(BobSetting setting, double wigner_angle) {
    auto c = ScenarioConfig::simple(0.5, wigner_angle);
    if (setting == BobSetting::computational) {
        c.bob_mu = PolarComplex{1.0, 0.0};
        c.bob_nu = PolarComplex{0.0, 0.0};
    } else {
        c.bob_mu = PolarComplex{1.0 / std::sqrt(3.0), 0.0};
        c.bob_nu = PolarComplex{std::sqrt(2.0 / 3.0), 0.0};
    }
    return c;
}

ProtocolTables theoretical_protocol_tables(BobSetting setting,
                                           double wigner_angle) {
    const auto config = protocol_config(setting, wigner_angle);
    ProtocolTables out;
    out.t2 = extended_joint_table(config, Time::t2);
    out.t3 = extended_joint_table(config, Time::t3);
    const auto joint = solve_joint_flip(config);
    if (!joint.feasible() ||
        std::abs(joint.q(0) - joint.q(1)) > kFeasibilityTolerance) {
        throw DomainError("protocol setting has no scalar flip probability");
    }
    out.q = joint.q(0);
    return out;
}

HiddenVariableModel hidden_variable_model(const ScenarioConfig &config) {
    const auto sol = solve_conditional_flip(config);
    if (!sol.feasible()) {
        throw DomainError("no four-parameter flip model for this setting");
    }
    HiddenVariableModel model;
    model.pre = extended_joint_table(config, Time::t2);
    for (std::size_t n = 0; n < 2; ++n) {
        for (std::size_t m = 0; m < 2; ++m) {
            model.flip[n][m] = sol.q(n, m);
        }
    }
    return model;
}

void ProtocolConfig::validate() const {
    if (n_registers < 1) {
        throw DomainError("the protocol needs at least one register");
    }
    if (bob_message.empty()) {
        throw DomainError("the message must carry at least one bit");
    }
    for (int bit : bob_message) {
        if (bit != 0 && bit != 1) {
            throw DomainError("message bits must be 0 or 1");
        }
    }
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::mostly_unflipped:
        return "mostly-unflipped";
    case Verdict::mostly_flipped:
        return "mostly-flipped";
    case Verdict::tie:
        return "tie";
    }
    return "unknown";
}

ProtocolResult run_protocol(const ProtocolConfig &config, Execution exec) {
    config.validate();
    const std::array<HiddenVariableModel, 2> models = {
        hidden_variable_model(
            protocol_config(BobSetting::computational, config.wigner_angle)),
        hidden_variable_model(
            protocol_config(BobSetting::tilted, config.wigner_angle))};

    ProtocolResult result;
    for (int s = 0; s < 2; ++s) {
        result.theoretical_q[static_cast<std::size_t>(s)] =
            theoretical_protocol_tables(static_cast<BobSetting>(s),
                                        config.wigner_angle)
                .q;
    }

    const RandomStream root(config.seed);
    const auto reps = config.bob_message.size();
    const auto n = config.n_registers;
    result.repetitions.resize(reps);
    for_each_index(reps, exec, [&](std::size_t r) {
        auto rng = root.child(r);
        const int bit = config.bob_message[r];
        const auto &model = models[static_cast<std::size_t>(bit)];
        RepetitionResult rep;
        rep.bit_sent = bit;
        for (std::size_t i = 0; i < n; ++i) {
            const auto pre = draw_pre(model.pre, rng);
            const bool flipped = rng.bernoulli(
                model.flip[pre.friend_record][pre.bob_record]);
            rep.flip_count += flipped ? 1 : 0;
            const auto after = flipped ? 1 - pre.friend_record
                                       : pre.friend_record;
            rep.friend_zero_after += after == 0 ? 1 : 0;
        }
        rep.flip_fraction =
            static_cast<double>(rep.flip_count) / static_cast<double>(n);
        if (2 * rep.flip_count > n) {
            rep.verdict = Verdict::mostly_flipped;
            rep.decoded_bit = 1;
        } else if (2 * rep.flip_count < n) {
            rep.verdict = Verdict::mostly_unflipped;
            rep.decoded_bit = 0;
        } else {
            rep.verdict = Verdict::tie;
            rep.decoded_bit = rng.coin() ? 1 : 0;
        }
        result.repetitions[r] = rep;
    });

    result.decoded.reserve(reps);
    for (const auto &rep : result.repetitions) {
        result.decoded.push_back(rep.decoded_bit);
        result.bit_errors += rep.decoded_bit != rep.bit_sent ? 1 : 0;
    }
    return result;
}

double channel_error_rate(const ProtocolResult &result,
                          const std::vector<int> &truth) {
    if (truth.size() != result.decoded.size()) {
        throw DomainError("decoded message and truth differ in length");
    }
    if (truth.empty()) {
        return 0.0;
    }
    std::size_t errors = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        errors += result.decoded[i] != truth[i] ? 1 : 0;
    }
    return static_cast<double>(errors) / static_cast<double>(truth.size());
}

ConsistencyReport hidden_variable_consistency(const HiddenVariableModel &model,
                                              const JointTable &analytic_t3,
                                              std::size_t samples,
                                              const RandomStream &stream,
                                              Execution exec) {
    if (samples == 0) {
        throw DomainError("hidden-variable consistency needs samples >= 1");
    }
    using Counts = std::array<std::array<std::size_t, 2>, 2>;
    const auto blocks = block_count(samples);
    std::vector<Counts> pre_counts(blocks);
    std::vector<Counts> post_counts(blocks);
    for_each_index(blocks, exec, [&](std::size_t k) {
        auto rng = stream.child(k);
        Counts pre{};
        Counts post{};
        const auto begin = k * kSampleBlock;
        const auto end = std::min(samples, begin + kSampleBlock);
        for (auto i = begin; i < end; ++i) {
            const auto r = draw_pre(model.pre, rng);
            const bool flipped =
                rng.bernoulli(model.flip[r.friend_record][r.bob_record]);
            const auto after = flipped ? 1 - r.friend_record : r.friend_record;
            ++pre[r.friend_record][r.bob_record];
            ++post[after][r.bob_record];
        }
        pre_counts[k] = pre;
        post_counts[k] = post;
    });

    Counts pre_total{};
    Counts post_total{};
    for (std::size_t k = 0; k < blocks; ++k) {
        for (int f = 0; f < 2; ++f) {
            for (int b = 0; b < 2; ++b) {
                pre_total[f][b] += pre_counts[k][f][b];
                post_total[f][b] += post_counts[k][f][b];
            }
        }
    }
    ConsistencyReport report;
    report.empirical_t2 = finish(pre_total, samples, Time::t2);
    report.empirical_t3 = finish(post_total, samples, Time::t3);
    report.analytic_t3 = analytic_t3;
    report.max_deviation =
        report.empirical_t3.table.max_abs_difference(analytic_t3);
    report.max_t2_deviation =
        report.empirical_t2.table.max_abs_difference(model.pre);
    return report;
}

ConsistencyReport hidden_variable_consistency(const ScenarioConfig &config,
                                              std::size_t samples,
                                              const RandomStream &stream,
                                              Execution exec) {
    return hidden_variable_consistency(
        hidden_variable_model(config), extended_joint_table(config, Time::t3),
        samples, stream, exec);
}

double standard_error(double p, std::size_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::vector<int> random_message(std::size_t bits, std::uint64_t seed,
                                std::uint64_t substream) {
    RandomStream rng(seed, substream);
    std::vector<int> message(bits);
    for (auto &bit : message) {
        bit = rng.coin() ? 1 : 0;
    }
    return message;
}

} // namespace wfm
