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

// Command-line front end. Exit codes: 0 success (including certified
// infeasibility), 1 verify-paper failure, 2 usage error, 3 domain or I/O
// error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "wfmemory/acceptance.hpp"
#include "wfmemory/flip_models.hpp"
#include "wfmemory/protocol.hpp"
#include "wfmemory/report.hpp"
#include "wfmemory/scenarios.hpp"

namespace {

using wfm::report::Json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "json";
    std::string out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App *cmd, Common &c, bool with_seed = true) {
    cmd->add_option("--report", c.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out, "Write the report to PATH");
    if (with_seed) {
        cmd->add_option("--seed", c.seed, "Random seed");
    }
}

// Scenario flags. Each party is given either by squared magnitudes or by an
// angle, never both.
struct ScenarioFlags {
    std::optional<double> alpha2, beta2, alpha_phase, beta_phase;
    std::optional<double> wigner_a2, wigner_b2, wigner_angle;
    std::optional<double> wigner_a_phase, wigner_b_phase;
    std::optional<double> bob_mu2, bob_nu2, bob_angle;
    std::optional<double> bob_mu_phase, bob_nu_phase;

    void attach(CLI::App *cmd, bool bob) {
        cmd->add_option("--alpha2", alpha2, "|alpha|^2 (default 1)");
        cmd->add_option("--beta2", beta2, "|beta|^2 (default 1 - |alpha|^2)");
        cmd->add_option("--alpha-phase", alpha_phase, "phase of alpha");
        cmd->add_option("--beta-phase", beta_phase, "phase of beta");
        cmd->add_option("--wigner-a2", wigner_a2, "|a|^2");
        cmd->add_option("--wigner-b2", wigner_b2, "|b|^2 (default 1 - |a|^2)");
        cmd->add_option("--wigner-angle", wigner_angle,
                        "x with a = sin x, b = cos x");
        cmd->add_option("--wigner-a-phase", wigner_a_phase, "phase of a");
        cmd->add_option("--wigner-b-phase", wigner_b_phase, "phase of b");
        if (bob) {
            cmd->add_option("--bob-mu2", bob_mu2, "|mu|^2");
            cmd->add_option("--bob-nu2", bob_nu2, "|nu|^2 (default 1 - |mu|^2)");
            cmd->add_option("--bob-angle", bob_angle,
                            "y with mu = cos y, nu = sin y");
            cmd->add_option("--bob-mu-phase", bob_mu_phase, "phase of mu");
            cmd->add_option("--bob-nu-phase", bob_nu_phase, "phase of nu");
        }
    }

    [[nodiscard]] bool has_bob() const {
        return bob_mu2 || bob_nu2 || bob_angle || bob_mu_phase || bob_nu_phase;
    }
};

double magnitude_of(double squared, const char *name) {
    if (!std::isfinite(squared) || squared < 0.0 || squared > 1.0) {
        throw wfm::DomainError(std::string(name) + " must lie in [0, 1]");
    }
    return std::sqrt(squared);
}

// Fills a pair from the squared-magnitude form. The second squared
// magnitude defaults to the complement; if given, normalization is checked
// by ScenarioConfig::validate.
void from_squares(wfm::PolarComplex &first, wfm::PolarComplex &second,
                  double s1, std::optional<double> s2, const char *n1,
                  const char *n2) {
    first.magnitude = magnitude_of(s1, n1);
    second.magnitude = magnitude_of(s2 ? *s2 : std::max(0.0, 1.0 - s1), n2);
}

// a = sin x, b = cos x with sign carried by a phase of pi.
void from_angle(wfm::PolarComplex &first, double v1, wfm::PolarComplex &second,
                double v2) {
    first = {std::abs(v1), v1 < 0.0 ? M_PI : 0.0};
    second = {std::abs(v2), v2 < 0.0 ? M_PI : 0.0};
}

wfm::ScenarioConfig build_config(const ScenarioFlags &f, bool need_bob,
                                 wfm::report::RunManifest &manifest) {
    wfm::ScenarioConfig c;
    from_squares(c.alpha, c.beta, f.alpha2.value_or(1.0), f.beta2, "--alpha2",
                 "--beta2");

    const bool wig_squares = f.wigner_a2 || f.wigner_b2;
    if (wig_squares && f.wigner_angle) {
        throw UsageError("give Wigner's setting as --wigner-a2 or "
                         "--wigner-angle, not both");
    }
    if (f.wigner_angle) {
        from_angle(c.wigner_a, std::sin(*f.wigner_angle), c.wigner_b,
                   std::cos(*f.wigner_angle));
    } else if (f.wigner_a2) {
        from_squares(c.wigner_a, c.wigner_b, *f.wigner_a2, f.wigner_b2,
                     "--wigner-a2", "--wigner-b2");
    } else if (f.wigner_b2) {
        from_squares(c.wigner_b, c.wigner_a, *f.wigner_b2, std::nullopt,
                     "--wigner-b2", "--wigner-a2");
    } else {
        throw UsageError("Wigner's setting is required (--wigner-a2 or "
                         "--wigner-angle)");
    }

    if (need_bob) {
        const bool bob_squares = f.bob_mu2 || f.bob_nu2;
        if (bob_squares && f.bob_angle) {
            throw UsageError("give Bob's setting as --bob-mu2 or --bob-angle, "
                             "not both");
        }
        wfm::PolarComplex mu;
        wfm::PolarComplex nu;
        if (f.bob_angle) {
            from_angle(mu, std::cos(*f.bob_angle), nu, std::sin(*f.bob_angle));
        } else if (f.bob_mu2) {
            from_squares(mu, nu, *f.bob_mu2, f.bob_nu2, "--bob-mu2",
                         "--bob-nu2");
        } else if (f.bob_nu2) {
            from_squares(nu, mu, *f.bob_nu2, std::nullopt, "--bob-nu2",
                         "--bob-mu2");
        } else {
            throw UsageError("Bob's setting is required (--bob-mu2 or "
                             "--bob-angle)");
        }
        mu.phase += f.bob_mu_phase.value_or(0.0);
        nu.phase += f.bob_nu_phase.value_or(0.0);
        c.bob_mu = mu;
        c.bob_nu = nu;
    } else if (f.has_bob()) {
        throw UsageError("Bob's setting only applies to the extended scenario");
    }

    c.alpha.phase += f.alpha_phase.value_or(0.0);
    c.beta.phase += f.beta_phase.value_or(0.0);
    c.wigner_a.phase += f.wigner_a_phase.value_or(0.0);
    c.wigner_b.phase += f.wigner_b_phase.value_or(0.0);
    c.validate(need_bob);

    auto echo = [&](const std::string &name, const wfm::PolarComplex &z) {
        manifest.add(name + ".magnitude", z.magnitude);
        manifest.add(name + ".phase", z.phase);
    };
    echo("alpha", c.alpha);
    echo("beta", c.beta);
    echo("wigner_a", c.wigner_a);
    echo("wigner_b", c.wigner_b);
    if (need_bob) {
        echo("bob_mu", *c.bob_mu);
        echo("bob_nu", *c.bob_nu);
    }
    return c;
}

Json interference_json(const wfm::ScenarioConfig &c) {
    const auto d = wfm::derived_interference(c);
    Json j{{"theta", d.theta}, {"chi", d.chi}};
    if (c.is_extended()) {
        j["vartheta"] = d.vartheta;
        j["xi"] = d.xi;
    }
    return j;
}

void emit(const Common &common, wfm::report::RunManifest manifest,
          const Json &payload,
          const std::optional<wfm::report::CsvTable> &csv = std::nullopt) {
    using namespace wfm::report;
    manifest.seed = common.seed;
    if (common.format == "csv") {
        const auto text = (csv ? *csv : flat_csv(payload)).render();
        if (common.out.empty()) {
            std::cout << text;
            return;
        }
        manifest.checksums["csv"] = sha256_hex(text);
        write_file(common.out, text);
        write_file(common.out + ".manifest.json",
                   envelope(manifest, payload, utc_timestamp()).dump(2) + "\n");
        return;
    }
    const auto text =
        envelope(std::move(manifest), payload, utc_timestamp()).dump(2) + "\n";
    if (common.out.empty()) {
        std::cout << text;
    } else {
        write_file(common.out, text);
    }
}

wfm::FlipFamily parse_family(const std::string &s) {
    if (s == "single") {
        return wfm::FlipFamily::single;
    }
    if (s == "two") {
        return wfm::FlipFamily::two;
    }
    if (s == "joint-two") {
        return wfm::FlipFamily::joint_two;
    }
    return wfm::FlipFamily::four;
}

std::vector<int> parse_bits(const std::string &s) {
    std::vector<int> bits;
    for (char ch : s) {
        if (ch != '0' && ch != '1') {
            throw UsageError("--message must be a string of 0s and 1s");
        }
        bits.push_back(ch - '0');
    }
    if (bits.empty()) {
        throw UsageError("--message must not be empty");
    }
    return bits;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Wigner's-friend memory simulator and flip-model toolkit",
                 "wfmemory"};
    app.set_version_flag("--version", std::string(WFM_VERSION));
    app.require_subcommand(1);

    Common common;
    ScenarioFlags flags;

    auto *simple = app.add_subcommand("simple", "Simple scenario statistics");
    add_common(simple, common);
    flags.attach(simple, false);

    auto *extended =
        app.add_subcommand("extended", "Extended scenario statistics");
    add_common(extended, common);
    flags.attach(extended, true);

    std::string model;
    std::string tie_break = "min-eps";
    auto *flip = app.add_subcommand("flip-solve", "Solve a flip model");
    add_common(flip, common);
    flags.attach(flip, true);
    flip->add_option("--model", model, "Flip model family")
        ->required()
        ->check(CLI::IsMember({"single", "two", "joint-two", "four"}));
    flip->add_option("--tie-break", tie_break,
                     "Rule for freedom left after the asymmetry tie-breaks")
        ->check(CLI::IsMember({"min-eps", "min-mass"}));

    std::size_t n_registers = 1000;
    std::optional<std::string> message;
    std::optional<std::size_t> reps;
    double protocol_angle = wfm::kProtocolWignerAngle;
    auto *protocol =
        app.add_subcommand("protocol", "Simulate the signaling protocol");
    add_common(protocol, common);
    protocol->add_option("--n", n_registers, "Registers per repetition")
        ->check(CLI::PositiveNumber);
    protocol->add_option("--message", message, "Bob's bits, e.g. 0101");
    protocol->add_option("--reps", reps,
                         "Repeat --message this many times, or draw a random "
                         "message of this length when --message is absent")
        ->check(CLI::PositiveNumber);
    protocol->add_option("--wigner-angle", protocol_angle, "Wigner's angle x");

    std::size_t steps = 200;
    double cosdphi = 1.0;
    auto *fig5 =
        app.add_subcommand("fig5", "Sweep the symmetric no-signaling candidate");
    add_common(fig5, common);
    fig5->add_option("--steps", steps, "Grid points over [0, pi/2]")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    fig5->add_option("--cosdphi", cosdphi, "cos of the phase difference")
        ->check(CLI::Range(-1.0, 1.0));

    auto *verify = app.add_subcommand("verify-paper",
                                      "Run the regression suite");
    add_common(verify, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        using namespace wfm;
        report::RunManifest manifest;
        if (simple->parsed()) {
            manifest.subcommand = "simple";
            const auto c = build_config(flags, false, manifest);
            const auto states = simple_states(c);
            Json payload{
                {"config", report::to_json(c)},
                {"interference", interference_json(c)},
                {"friend",
                 {{"t1", report::to_json(simple_friend_marginal(c, Time::t1))},
                  {"t2",
                   report::to_json(simple_friend_marginal(c, Time::t2))}}},
                {"remainder_weight_t2", evaluate_remainder_weight(states[2])}};
            emit(common, manifest, payload);
        } else if (extended->parsed()) {
            manifest.subcommand = "extended";
            const auto c = build_config(flags, true, manifest);
            const auto states = extended_states(c);
            auto marg = [&](Party p, Time t) {
                return report::to_json(extended_marginals(c, p, t));
            };
            Json payload{
                {"config", report::to_json(c)},
                {"interference", interference_json(c)},
                {"friend",
                 {{"t1", marg(Party::wigners_friend, Time::t1)},
                  {"t2", marg(Party::wigners_friend, Time::t2)},
                  {"t3", marg(Party::wigners_friend, Time::t3)}}},
                {"bob",
                 {{"t2", marg(Party::bob, Time::t2)},
                  {"t3", marg(Party::bob, Time::t3)}}},
                {"joint",
                 {{"t2", report::to_json(extended_joint_table(c, Time::t2))},
                  {"t3", report::to_json(extended_joint_table(c, Time::t3))}}},
                {"remainder_weight_t3", evaluate_remainder_weight(states[3])}};
            emit(common, manifest, payload);
        } else if (flip->parsed()) {
            manifest.subcommand = "flip-solve";
            const auto family = parse_family(model);
            const bool need_bob = family == FlipFamily::joint_two ||
                                  family == FlipFamily::four;
            manifest.add("model", model);
            manifest.add("tie_break", tie_break);
            const auto c = build_config(flags, need_bob, manifest);
            const auto rule = tie_break == "min-mass"
                                  ? SecondaryRule::min_mass
                                  : SecondaryRule::reference_flip;
            const auto sol = solve_flip(family, c, rule);
            Json payload{{"config", report::to_json(c)},
                         {"model", model},
                         {"tie_break", tie_break},
                         {"solution", report::to_json(sol)}};
            emit(common, manifest, payload);
        } else if (protocol->parsed()) {
            manifest.subcommand = "protocol";
            if (!common.seed) {
                common.seed = acceptance::kShippedSeed;
            }
            ProtocolConfig cfg;
            cfg.n_registers = n_registers;
            cfg.seed = *common.seed;
            cfg.wigner_angle = protocol_angle;
            if (message) {
                const auto bits = parse_bits(*message);
                for (std::size_t r = 0; r < reps.value_or(1); ++r) {
                    cfg.bob_message.insert(cfg.bob_message.end(), bits.begin(),
                                           bits.end());
                }
            } else if (reps) {
                cfg.bob_message = random_message(*reps, cfg.seed);
            } else {
                throw UsageError("protocol needs --message or --reps");
            }
            std::string sent;
            for (int b : cfg.bob_message) {
                sent += b != 0 ? '1' : '0';
            }
            manifest.add("n", std::to_string(cfg.n_registers));
            manifest.add("message", sent);
            manifest.add("wigner_angle", cfg.wigner_angle);
            const auto res = run_protocol(cfg);
            Json payload{{"n_registers", cfg.n_registers},
                         {"message", sent},
                         {"wigner_angle", cfg.wigner_angle},
                         {"error_rate",
                          channel_error_rate(res, cfg.bob_message)},
                         {"result", report::to_json(res)}};
            emit(common, manifest, payload, report::protocol_csv(res));
        } else if (fig5->parsed()) {
            manifest.subcommand = "fig5";
            manifest.add("steps", std::to_string(steps));
            manifest.add("cosdphi", cosdphi);
            const auto points = feasibility_sweep(steps, cosdphi);
            Json pts = Json::array();
            for (const auto &p : points) {
                pts.push_back(report::to_json(p));
            }
            Json payload{{"steps", steps},
                         {"cos_delta_phi", cosdphi},
                         {"any_infeasible", any_infeasible(points)},
                         {"points", pts}};
            emit(common, manifest, payload, report::fig5_csv(points));
        } else if (verify->parsed()) {
            manifest.subcommand = "verify-paper";
            acceptance::Options opts;
            if (common.seed) {
                opts.seed = *common.seed;
            }
            const bool text = common.format == "json" && common.out.empty() &&
                              verify->count("--report") == 0;
            const auto results = acceptance::run_all(
                opts, [&](const acceptance::CriterionResult &r) {
                    if (text) {
                        std::cout << acceptance::format_line(r) << std::endl;
                    }
                });
            bool all = true;
            Json list = Json::array();
            for (const auto &r : results) {
                all = all && r.passed;
                list.push_back(Json{{"id", r.id},
                                    {"name", r.name},
                                    {"passed", r.passed},
                                    {"detail", r.detail}});
            }
            if (!text) {
                common.seed = opts.seed;
                emit(common, manifest,
                     Json{{"all_passed", all}, {"criteria", list}});
            }
            return all ? 0 : kExitVerifyFailed;
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
