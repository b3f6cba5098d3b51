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
#include "wfmemory/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace wfm::report {

namespace {

std::string printf_double(const char *fmt, double v) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), fmt, v);
    return buf.data();
}

Json pair_json(const std::array<double, 2> &p) { return Json::array({p[0], p[1]}); }

Json polar_json(const PolarComplex &z) {
    return Json{{"magnitude", z.magnitude}, {"phase", z.phase}};
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

void flatten(const Json &j, const std::string &prefix, CsvTable &table) {
    if (j.is_object()) {
        for (const auto &[key, value] : j.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, table);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", table);
        }
    } else if (j.is_number_float()) {
        table.rows.push_back({prefix, csv_decimal(j.get<double>())});
    } else if (j.is_string()) {
        table.rows.push_back({prefix, j.get<std::string>()});
    } else if (!j.is_null()) {
        table.rows.push_back({prefix, j.dump()});
    }
}

} // namespace

std::string exact_decimal(double v) { return printf_double("%.17g", v); }

std::string csv_decimal(double v) { return printf_double("%.12g", v); }

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                   nullptr) != 1) {
        throw DomainError("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

void RunManifest::add(const std::string &name, double value) {
    parameters.emplace_back(name, exact_decimal(value));
}

void RunManifest::add(const std::string &name, const std::string &value) {
    parameters.emplace_back(name, value);
}

Json to_json(const RunManifest &m) {
    Json params = Json::object();
    for (const auto &[k, v] : m.parameters) {
        params[k] = v;
    }
    Json j{{"subcommand", m.subcommand},
           {"parameters", params},
           {"seed", nullptr},
           {"version", m.version},
           {"checksums", Json::object()}};
    if (m.seed) {
        j["seed"] = *m.seed;
    }
    for (const auto &[k, v] : m.checksums) {
        j["checksums"][k] = v;
    }
    return j;
}

Json to_json(const ScenarioConfig &c) {
    Json j{{"alpha", polar_json(c.alpha)},
           {"beta", polar_json(c.beta)},
           {"wigner_a", polar_json(c.wigner_a)},
           {"wigner_b", polar_json(c.wigner_b)}};
    if (c.is_extended()) {
        j["bob_mu"] = polar_json(*c.bob_mu);
        j["bob_nu"] = polar_json(*c.bob_nu);
    }
    return j;
}

Json to_json(const OutcomeDistribution &d) {
    return Json{{"party", to_string(d.party)},
                {"time", to_string(d.time)},
                {"p", pair_json(d.p)}};
}

Json to_json(const JointTable &t) {
    return Json{{"time", to_string(t.time)},
                {"p", Json::array({pair_json(t.p[0]), pair_json(t.p[1])})}};
}

Json to_json(const FlipSolution &s) {
    Json eqs = Json::array();
    for (const auto &e : s.equations) {
        eqs.push_back(Json{{"name", e.name},
                           {"coefficients", e.coefficients},
                           {"rhs", e.rhs}});
    }
    Json j{{"family", to_string(s.family)},
           {"status", to_string(s.status)},
           {"parameters", s.parameters},
           {"effective", nullptr},
           {"epsilon", s.epsilon},
           {"residual", s.residual},
           {"certificate", nullptr},
           {"reference", s.reference},
           {"secondary_rule", to_string(s.rule)},
           {"equations", eqs}};
    if (s.effective) {
        j["effective"] = pair_json(*s.effective);
    }
    if (s.certificate) {
        j["certificate"] = Json{{"equation", s.certificate->equation},
                                {"violation_floor",
                                 s.certificate->violation_floor}};
    }
    return j;
}

Json to_json(const FeasibilityPoint &p) {
    return Json{{"x", p.x},
                {"cos_delta_phi", p.cos_delta_phi},
                {"q00", p.q00},
                {"feasible", p.feasible}};
}

Json to_json(const ProtocolResult &r) {
    Json reps = Json::array();
    std::string decoded;
    for (const auto &rep : r.repetitions) {
        reps.push_back(Json{{"bit_sent", rep.bit_sent},
                            {"flip_count", rep.flip_count},
                            {"flip_fraction", rep.flip_fraction},
                            {"verdict", to_string(rep.verdict)},
                            {"decoded_bit", rep.decoded_bit},
                            {"friend_zero_after", rep.friend_zero_after}});
        decoded += rep.decoded_bit != 0 ? '1' : '0';
    }
    return Json{{"decoded_message", decoded},
                {"bit_errors", r.bit_errors},
                {"theoretical_q", pair_json(r.theoretical_q)},
                {"repetitions", reps}};
}

std::string canonical(const Json &payload) { return payload.dump(); }

Json envelope(RunManifest manifest, const Json &payload,
              const std::string &generated_at) {
    manifest.checksums["payload"] = sha256_hex(canonical(payload));
    return Json{{"schema_version", kSchemaVersion},
                {"manifest", to_json(manifest)},
                {"payload", payload},
                {"generated_at", generated_at}};
}

std::string CsvTable::render() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << csv_escape(cells[i]);
        }
        out << '\n';
    };
    line(header);
    for (const auto &row : rows) {
        line(row);
    }
    return out.str();
}

CsvTable fig5_csv(const std::vector<FeasibilityPoint> &points) {
    CsvTable t{{"x", "q00", "feasible"}, {}};
    for (const auto &p : points) {
        t.rows.push_back({csv_decimal(p.x), csv_decimal(p.q00),
                          p.feasible ? "true" : "false"});
    }
    return t;
}

CsvTable protocol_csv(const ProtocolResult &r) {
    CsvTable t{{"repetition", "bit_sent", "flip_count", "flip_fraction",
                "verdict", "decoded_bit"},
               {}};
    for (std::size_t i = 0; i < r.repetitions.size(); ++i) {
        const auto &rep = r.repetitions[i];
        t.rows.push_back({std::to_string(i), std::to_string(rep.bit_sent),
                          std::to_string(rep.flip_count),
                          csv_decimal(rep.flip_fraction),
                          to_string(rep.verdict),
                          std::to_string(rep.decoded_bit)});
    }
    return t;
}

CsvTable flat_csv(const Json &payload) {
    CsvTable t{{"quantity", "value"}, {}};
    flatten(payload, "", t);
    return t;
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DomainError("cannot open '" + path + "' for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        throw DomainError("failed writing '" + path + "'");
    }
}

} // namespace wfm::report
