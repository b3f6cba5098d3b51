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
 * @file report.hpp
 * JSON and CSV serialization of results plus the run manifest.
 *
 * A JSON report is an envelope
 *
 *   { "schema_version", "manifest", "payload", "generated_at" }
 *
 * where `manifest.checksums.payload` is the SHA-256 of the compact payload
 * dump. Everything except `generated_at` is a pure function of the inputs.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wfmemory/flip_models.hpp"
#include "wfmemory/protocol.hpp"
#include "wfmemory/scenarios.hpp"

namespace wfm::report {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "1.0.0";

/// "%.17g": parses back to the identical double.
std::string exact_decimal(double v);
/// "%.12g" for CSV cells.
std::string csv_decimal(double v);

std::string sha256_hex(std::string_view data);

/// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

struct RunManifest {
    std::string subcommand;
    /// Echo of every input, numbers as exact_decimal strings.
    std::vector<std::pair<std::string, std::string>> parameters;
    std::optional<std::uint64_t> seed;
    std::string version = WFM_VERSION;
    std::map<std::string, std::string> checksums;

    void add(const std::string &name, double value);
    void add(const std::string &name, const std::string &value);
};

Json to_json(const RunManifest &m);
Json to_json(const ScenarioConfig &c);
Json to_json(const OutcomeDistribution &d);
Json to_json(const JointTable &t);
Json to_json(const FlipSolution &s);
Json to_json(const FeasibilityPoint &p);
Json to_json(const ProtocolResult &r);

/// Compact dump used for checksums and byte-stable payload comparison.
std::string canonical(const Json &payload);

/// Fills `manifest.checksums["payload"]` and wraps the payload.
Json envelope(RunManifest manifest, const Json &payload,
              const std::string &generated_at);

/// Plain CSV table.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::string render() const;
};

/// Columns x, q00, feasible.
CsvTable fig5_csv(const std::vector<FeasibilityPoint> &points);
/// One row per repetition.
CsvTable protocol_csv(const ProtocolResult &r);
/// Flattens a payload into (quantity, value) rows; numbers at 12 digits.
CsvTable flat_csv(const Json &payload);

/// Writes `contents` to `path`; throws DomainError if it cannot.
void write_file(const std::string &path, const std::string &contents);

} // namespace wfm::report
