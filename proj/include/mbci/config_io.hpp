/*
 * Copyright 2026 The mbci authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MBCI_CONFIG_IO_HPP
#define MBCI_CONFIG_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "mbci/correlators.hpp"
#include "mbci/thermal.hpp"
#include "mbci/unitary.hpp"

namespace mbci {

using ordered_json = nlohmann::ordered_json;

/// Configuration parse/validation failure carrying the offending field path.
class ConfigError : public ValidationError {
public:
    ConfigError(std::string field, const std::string& message)
        : ValidationError(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct McSettings {
    std::size_t n_bins = 64;
    double span_sigmas = 5.0;
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
};

enum class OutputFormat { Json, Csv };

/// One experiment: a full instance plus run options. Detection times are
/// held in absolute units internally; configs may supply them in units of
/// 1/delta_omega via "time_unit": "inverse-delta-omega".
struct ExperimentConfig {
    UnitarySpec unitary;
    SourceBank sources;
    DetectionEvent event;
    Formulation formulation = Formulation::PermanentC;
    OutputFormat output = OutputFormat::Json;
    std::optional<McSettings> mc;

    /// Materializes and validates the instance this config describes.
    ThermalInstance instance() const;
};

ExperimentConfig parse_config(const ordered_json& doc, const std::filesystem::path& base_dir);
ExperimentConfig load_config_file(const std::filesystem::path& path);
ordered_json config_to_json(const ExperimentConfig& config);

/// Replay form of an in-memory instance: explicit unitary entries embedded.
ordered_json instance_to_config_json(const ThermalInstance& inst);

ordered_json unitary_to_json(const ComplexMatrix& u, UnitaryConstruction construction,
                             std::optional<std::uint64_t> seed);
ComplexMatrix unitary_matrix_from_json(const ordered_json& doc, const std::string& field);

/// Shortest fixed-format serialization that round-trips doubles exactly:
/// printf %.17g.
std::string format_double_17(double value);

/// Deterministic JSON writer: insertion-ordered keys, floating-point values
/// rendered with 17 significant digits.
std::string dump_json_17(const ordered_json& doc, int indent = 2);

} // namespace mbci

#endif
