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

#include "mbci/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mbci {

namespace {

double require_number(const ordered_json& doc, const std::string& field) {
    if (!doc.is_number()) throw ConfigError(field, "expected a number");
    return doc.get<double>();
}

double require_finite(const ordered_json& doc, const std::string& field) {
    const double v = require_number(doc, field);
    if (!std::isfinite(v)) throw ConfigError(field, "expected a finite number");
    return v;
}

std::uint64_t require_u64(const ordered_json& doc, const std::string& field) {
    if (!doc.is_number_integer()) throw ConfigError(field, "expected an integer");
    if (doc.is_number_unsigned()) return doc.get<std::uint64_t>();
    const auto v = doc.get<std::int64_t>();
    return static_cast<std::uint64_t>(v);
}

cdouble parse_complex(const ordered_json& doc, const std::string& field) {
    if (!doc.is_array() || doc.size() != 2) throw ConfigError(field, "expected a [re, im] pair");
    return {require_finite(doc[0], field + "[0]"), require_finite(doc[1], field + "[1]")};
}

ordered_json complex_to_json(const cdouble& z) { return ordered_json::array({z.real(), z.imag()}); }

UnitarySpec parse_unitary_spec(const ordered_json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("unitary", "expected an object");
    UnitarySpec spec;
    if (doc.contains("file")) {
        if (!doc["file"].is_string()) throw ConfigError("unitary.file", "expected a string path");
        auto path = std::filesystem::path(doc["file"].get<std::string>());
        if (path.is_relative()) path = base_dir / path;
        std::ifstream in(path);
        if (!in) throw ConfigError("unitary.file", "cannot open " + path.string());
        ordered_json udoc;
        try {
            in >> udoc;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("unitary.file", std::string("invalid JSON: ") + e.what());
        }
        spec.entries = unitary_matrix_from_json(udoc, "unitary.file");
        spec.dimension = spec.entries.rows();
        spec.construction = UnitaryConstruction::ExplicitEntries;
        return spec;
    }
    if (!doc.contains("dim")) throw ConfigError("unitary.dim", "required");
    const auto dim = require_u64(doc["dim"], "unitary.dim");
    if (dim < 1) throw ConfigError("unitary.dim", "must be >= 1");
    spec.dimension = static_cast<std::size_t>(dim);
    if (doc.contains("entries")) {
        const auto& rows = doc["entries"];
        if (!rows.is_array() || rows.size() != spec.dimension)
            throw ConfigError("unitary.entries", "expected dim rows");
        ComplexMatrix m(spec.dimension, spec.dimension);
        for (std::size_t i = 0; i < spec.dimension; ++i) {
            const auto& row = rows[i];
            const std::string row_field = "unitary.entries[" + std::to_string(i) + "]";
            if (!row.is_array() || row.size() != spec.dimension) throw ConfigError(row_field, "expected dim entries");
            for (std::size_t j = 0; j < spec.dimension; ++j)
                m(i, j) = parse_complex(row[j], row_field + "[" + std::to_string(j) + "]");
        }
        spec.entries = std::move(m);
        spec.construction = UnitaryConstruction::ExplicitEntries;
    } else if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) throw ConfigError("unitary.preset", "expected a string");
        const auto preset = construction_from_name(doc["preset"].get<std::string>());
        if (!preset || *preset == UnitaryConstruction::HaarRandom || *preset == UnitaryConstruction::ExplicitEntries)
            throw ConfigError("unitary.preset",
                              "unknown preset '" + doc["preset"].get<std::string>() +
                                  "' (expected identity | balanced-beamsplitter | discrete-fourier)");
        spec.construction = *preset;
    } else {
        spec.construction = UnitaryConstruction::HaarRandom;
        if (doc.contains("seed")) spec.seed = require_u64(doc["seed"], "unitary.seed");
    }
    try {
        spec.validate();
    } catch (const ValidationError& e) {
        throw ConfigError("unitary", e.what());
    }
    return spec;
}

ordered_json unitary_spec_to_json(const UnitarySpec& spec) {
    ordered_json out = ordered_json::object();
    out["dim"] = spec.dimension;
    switch (spec.construction) {
        case UnitaryConstruction::HaarRandom:
            out["seed"] = spec.seed;
            break;
        case UnitaryConstruction::Identity:
        case UnitaryConstruction::BalancedBeamsplitter:
        case UnitaryConstruction::DiscreteFourier:
            out["preset"] = construction_name(spec.construction);
            break;
        case UnitaryConstruction::ExplicitEntries: {
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < spec.entries.rows(); ++i) {
                ordered_json row = ordered_json::array();
                for (std::size_t j = 0; j < spec.entries.cols(); ++j) row.push_back(complex_to_json(spec.entries(i, j)));
                rows.push_back(std::move(row));
            }
            out["entries"] = std::move(rows);
            break;
        }
    }
    return out;
}

} // namespace

ThermalInstance ExperimentConfig::instance() const {
    ThermalInstance inst;
    inst.unitary = random_unitary(unitary);
    inst.sources = sources;
    inst.event = event;
    inst.validate();
    return inst;
}

ExperimentConfig parse_config(const ordered_json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
    ExperimentConfig config;

    if (!doc.contains("unitary")) throw ConfigError("unitary", "required");
    config.unitary = parse_unitary_spec(doc["unitary"], base_dir);

    if (!doc.contains("rates") || !doc["rates"].is_array()) throw ConfigError("rates", "expected an array");
    const auto& rates = doc["rates"];
    if (rates.size() != config.unitary.dimension)
        throw ConfigError("rates", "expected one rate per input port (" + std::to_string(config.unitary.dimension) + ")");
    for (std::size_t s = 0; s < rates.size(); ++s) {
        const std::string field = "rates[" + std::to_string(s) + "]";
        const double r = require_finite(rates[s], field);
        if (r < 0.0) throw ConfigError(field, "must be >= 0");
        config.sources.rates.push_back(r);
    }
    if (doc.contains("omega0")) config.sources.omega0 = require_finite(doc["omega0"], "omega0");
    if (doc.contains("delta_omega")) config.sources.delta_omega = require_finite(doc["delta_omega"], "delta_omega");
    if (doc.contains("e_const")) config.sources.e_const = require_finite(doc["e_const"], "e_const");
    try {
        config.sources.validate();
    } catch (const ValidationError& e) {
        throw ConfigError("sources", e.what());
    }

    if (!doc.contains("ports") || !doc["ports"].is_array()) throw ConfigError("ports", "expected an array");
    for (std::size_t i = 0; i < doc["ports"].size(); ++i) {
        const std::string field = "ports[" + std::to_string(i) + "]";
        if (!doc["ports"][i].is_number_integer()) throw ConfigError(field, "expected an integer port index");
        config.event.ports.push_back(doc["ports"][i].get<int>());
    }
    if (!doc.contains("times") || !doc["times"].is_array()) throw ConfigError("times", "expected an array");
    double time_scale = 1.0;
    if (doc.contains("time_unit")) {
        if (!doc["time_unit"].is_string()) throw ConfigError("time_unit", "expected a string");
        const auto unit = doc["time_unit"].get<std::string>();
        if (unit == "inverse-delta-omega") {
            time_scale = 1.0 / config.sources.delta_omega;
        } else if (unit != "absolute") {
            throw ConfigError("time_unit", "expected 'absolute' or 'inverse-delta-omega'");
        }
    }
    for (std::size_t i = 0; i < doc["times"].size(); ++i) {
        const std::string field = "times[" + std::to_string(i) + "]";
        config.event.times.push_back(require_finite(doc["times"][i], field) * time_scale);
    }
    try {
        config.event.validate(config.unitary.dimension);
    } catch (const ValidationError& e) {
        throw ConfigError("ports/times", e.what());
    }

    if (doc.contains("formulation")) {
        if (!doc["formulation"].is_string()) throw ConfigError("formulation", "expected a string");
        const auto f = formulation_from_name(doc["formulation"].get<std::string>());
        if (!f)
            throw ConfigError("formulation", "unknown formulation '" + doc["formulation"].get<std::string>() +
                                                 "' (expected perm-sum | per-C | config-sum | equal-times | "
                                                 "incoherent | uncorrelated)");
        config.formulation = *f;
    }
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) throw ConfigError("output", "expected a string");
        const auto format = doc["output"].get<std::string>();
        if (format == "json") {
            config.output = OutputFormat::Json;
        } else if (format == "csv") {
            config.output = OutputFormat::Csv;
        } else {
            throw ConfigError("output", "expected 'json' or 'csv'");
        }
    }
    if (doc.contains("mc")) {
        if (!doc["mc"].is_object()) throw ConfigError("mc", "expected an object");
        McSettings mc;
        const auto& mdoc = doc["mc"];
        if (mdoc.contains("n_bins")) mc.n_bins = static_cast<std::size_t>(require_u64(mdoc["n_bins"], "mc.n_bins"));
        if (mdoc.contains("span_sigmas")) mc.span_sigmas = require_finite(mdoc["span_sigmas"], "mc.span_sigmas");
        if (mdoc.contains("n_samples")) mc.n_samples = require_u64(mdoc["n_samples"], "mc.n_samples");
        if (mdoc.contains("seed")) mc.seed = require_u64(mdoc["seed"], "mc.seed");
        if (mc.n_bins < 8) throw ConfigError("mc.n_bins", "must be >= 8");
        if (mc.span_sigmas < 3.0) throw ConfigError("mc.span_sigmas", "must be >= 3");
        config.mc = mc;
    }
    return config;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

ordered_json config_to_json(const ExperimentConfig& config) {
    ordered_json out = ordered_json::object();
    out["unitary"] = unitary_spec_to_json(config.unitary);
    out["rates"] = config.sources.rates;
    out["omega0"] = config.sources.omega0;
    out["delta_omega"] = config.sources.delta_omega;
    out["e_const"] = config.sources.e_const;
    out["ports"] = config.event.ports;
    out["times"] = config.event.times;
    out["time_unit"] = "absolute";
    out["formulation"] = formulation_name(config.formulation);
    out["output"] = config.output == OutputFormat::Json ? "json" : "csv";
    if (config.mc) {
        ordered_json mc = ordered_json::object();
        mc["n_bins"] = config.mc->n_bins;
        mc["span_sigmas"] = config.mc->span_sigmas;
        mc["n_samples"] = config.mc->n_samples;
        mc["seed"] = config.mc->seed;
        out["mc"] = std::move(mc);
    }
    return out;
}

ordered_json instance_to_config_json(const ThermalInstance& inst) {
    ExperimentConfig config;
    config.unitary.dimension = inst.modes();
    config.unitary.construction = UnitaryConstruction::ExplicitEntries;
    config.unitary.entries = inst.unitary;
    config.sources = inst.sources;
    config.event = inst.event;
    return config_to_json(config);
}

ordered_json unitary_to_json(const ComplexMatrix& u, UnitaryConstruction construction,
                             std::optional<std::uint64_t> seed) {
    ordered_json out = ordered_json::object();
    out["dim"] = u.rows();
    out["construction"] = construction_name(construction);
    if (seed) out["seed"] = *seed;
    out["unitarity_residual"] = unitarity_residual(u);
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < u.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < u.cols(); ++j) row.push_back(complex_to_json(u(i, j)));
        rows.push_back(std::move(row));
    }
    out["entries"] = std::move(rows);
    return out;
}

ComplexMatrix unitary_matrix_from_json(const ordered_json& doc, const std::string& field) {
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw ConfigError(field, "expected an object with an 'entries' array");
    const auto& rows = doc["entries"];
    const std::size_t dim = rows.size();
    if (dim == 0) throw ConfigError(field + ".entries", "must be nonempty");
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::string row_field = field + ".entries[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != dim) throw ConfigError(row_field, "expected a square matrix");
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = parse_complex(rows[i][j], row_field + "[" + std::to_string(j) + "]");
    }
    if (doc.contains("dim") && doc["dim"].is_number_integer() &&
        doc["dim"].get<std::uint64_t>() != static_cast<std::uint64_t>(dim))
        throw ConfigError(field + ".dim", "does not match entries size");
    return m;
}

std::string format_double_17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

void append_json_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void dump_value(std::string& out, const ordered_json& doc, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (doc.type()) {
        case ordered_json::value_t::object: {
            if (doc.empty()) {
                out += "{}";
                return;
            }
            out.push_back('{');
            bool first = true;
            for (const auto& [key, value] : doc.items()) {
                if (!first) out.push_back(',');
                first = false;
                out.push_back('\n');
                out += pad;
                append_json_escaped(out, key);
                out += ": ";
                dump_value(out, value, indent, depth + 1);
            }
            out.push_back('\n');
            out += close_pad;
            out.push_back('}');
            return;
        }
        case ordered_json::value_t::array: {
            if (doc.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line; nested structures wrap.
            const bool scalar_only = std::all_of(doc.begin(), doc.end(),
                                                 [](const ordered_json& v) { return !v.is_structured(); });
            bool first = true;
            out.push_back('[');
            for (const auto& value : doc) {
                if (!first) out += scalar_only ? ", " : ",";
                first = false;
                if (!scalar_only) {
                    out.push_back('\n');
                    out += pad;
                }
                dump_value(out, value, indent, depth + 1);
            }
            if (!scalar_only) {
                out.push_back('\n');
                out += close_pad;
            }
            out.push_back(']');
            return;
        }
        case ordered_json::value_t::number_float: {
            const double v = doc.get<double>();
            out += std::isfinite(v) ? format_double_17(v) : "null";
            return;
        }
        default:
            out += doc.dump();
            return;
    }
}

} // namespace

std::string dump_json_17(const ordered_json& doc, int indent) {
    std::string out;
    dump_value(out, doc, indent, 0);
    out.push_back('\n');
    return out;
}

} // namespace mbci
