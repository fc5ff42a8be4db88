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

#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <random>

#include "mbci/config_io.hpp"
#include "mbci/rng.hpp"

using mbci::ConfigError;
using mbci::ordered_json;

namespace {

ordered_json hbt_config() {
    return ordered_json{{"unitary", {{"dim", 2}, {"preset", "balanced-beamsplitter"}}},
                        {"rates", {1.0, 0.0}},
                        {"ports", {1, 2}},
                        {"times", {0.0, 0.5}},
                        {"formulation", "per-C"}};
}

std::string field_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

} // namespace

TEST_CASE("parsing a full config") {
    auto doc = hbt_config();
    doc["omega0"] = 12.0;
    doc["delta_omega"] = 0.5;
    doc["e_const"] = 1.0;
    doc["output"] = "csv";
    doc["mc"] = ordered_json{{"n_bins", 32}, {"n_samples", 20000}, {"seed", 9}};

    const auto config = mbci::parse_config(doc, ".");
    CHECK(config.unitary.construction == mbci::UnitaryConstruction::BalancedBeamsplitter);
    CHECK(config.sources.omega0 == 12.0);
    CHECK(config.sources.delta_omega == 0.5);
    CHECK(config.event.ports == std::vector<int>{1, 2});
    CHECK(config.formulation == mbci::Formulation::PermanentC);
    CHECK(config.output == mbci::OutputFormat::Csv);
    REQUIRE(config.mc.has_value());
    CHECK(config.mc->n_bins == 32);
    CHECK(config.mc->n_samples == 20000);

    const auto inst = config.instance();
    CHECK(inst.modes() == 2);
    CHECK(inst.order() == 2);
}

TEST_CASE("times can be given in units of 1/delta_omega") {
    auto doc = hbt_config();
    doc["delta_omega"] = 0.25;
    doc["time_unit"] = "inverse-delta-omega";
    const auto config = mbci::parse_config(doc, ".");
    CHECK(config.event.times[1] == doctest::Approx(0.5 / 0.25).epsilon(1e-15));

    doc["time_unit"] = "absolute";
    CHECK(mbci::parse_config(doc, ".").event.times[1] == 0.5);
}

TEST_CASE("round trip is semantically idempotent") {
    auto doc = hbt_config();
    doc["mc"] = ordered_json{{"n_bins", 64}};
    const auto config = mbci::parse_config(doc, ".");
    const auto dumped = mbci::dump_json_17(mbci::config_to_json(config));
    const auto reparsed = mbci::parse_config(ordered_json::parse(dumped), ".");

    CHECK(reparsed.event.ports == config.event.ports);
    CHECK(reparsed.event.times == config.event.times);
    CHECK(reparsed.sources.rates == config.sources.rates);
    CHECK(reparsed.sources.omega0 == config.sources.omega0);
    CHECK(reparsed.formulation == config.formulation);
    CHECK(mbci::max_abs_diff(reparsed.instance().unitary, config.instance().unitary) == 0.0);

    // A second serialization is byte-identical.
    CHECK(mbci::dump_json_17(mbci::config_to_json(reparsed)) == dumped);
}

TEST_CASE("haar seed and explicit entries round-trip") {
    ordered_json doc{{"unitary", {{"dim", 3}, {"seed", 42}}},
                     {"rates", {1.0, 0.5, 0.2}},
                     {"ports", {1, 3}},
                     {"times", {0.0, 0.0}}};
    const auto config = mbci::parse_config(doc, ".");
    CHECK(config.unitary.construction == mbci::UnitaryConstruction::HaarRandom);
    CHECK(config.unitary.seed == 42);
    const auto inst = config.instance();

    const auto replay = mbci::instance_to_config_json(inst);
    const auto reparsed = mbci::parse_config(replay, ".");
    CHECK(reparsed.unitary.construction == mbci::UnitaryConstruction::ExplicitEntries);
    CHECK(mbci::max_abs_diff(reparsed.instance().unitary, inst.unitary) == 0.0);
}

TEST_CASE("unitary file serialization round-trips exactly") {
    mbci::UnitarySpec spec;
    spec.dimension = 5;
    spec.seed = 7;
    const auto u = mbci::random_unitary(spec);
    const auto doc = mbci::unitary_to_json(u, mbci::UnitaryConstruction::HaarRandom, 7);
    CHECK(doc["dim"] == 5);
    CHECK(doc["seed"] == 7);
    CHECK(doc["unitarity_residual"].get<double>() < 1e-12);
    const auto text = mbci::dump_json_17(doc);
    const auto recovered = mbci::unitary_matrix_from_json(ordered_json::parse(text), "unitary");
    CHECK(mbci::max_abs_diff(recovered, u) == 0.0);
}

TEST_CASE("config errors carry the offending field") {
    auto missing_rates = hbt_config();
    missing_rates.erase("rates");
    CHECK(field_of([&] { mbci::parse_config(missing_rates, "."); }) == "rates");

    auto negative_rate = hbt_config();
    negative_rate["rates"] = {1.0, -0.5};
    CHECK(field_of([&] { mbci::parse_config(negative_rate, "."); }) == "rates[1]");

    auto bad_preset = hbt_config();
    bad_preset["unitary"]["preset"] = "mystery";
    CHECK(field_of([&] { mbci::parse_config(bad_preset, "."); }) == "unitary.preset");

    auto bad_formulation = hbt_config();
    bad_formulation["formulation"] = "quantum";
    CHECK(field_of([&] { mbci::parse_config(bad_formulation, "."); }) == "formulation");

    auto duplicate_ports = hbt_config();
    duplicate_ports["ports"] = {1, 1};
    CHECK(field_of([&] { mbci::parse_config(duplicate_ports, "."); }) == "ports/times");

    auto wrong_rate_count = hbt_config();
    wrong_rate_count["rates"] = {1.0};
    CHECK(field_of([&] { mbci::parse_config(wrong_rate_count, "."); }) == "rates");

    auto missing_file = hbt_config();
    missing_file["unitary"] = ordered_json{{"file", "does-not-exist.json"}};
    CHECK(field_of([&] { mbci::parse_config(missing_file, "."); }) == "unitary.file");

    auto bad_mc = hbt_config();
    bad_mc["mc"] = ordered_json{{"n_bins", 4}};
    CHECK(field_of([&] { mbci::parse_config(bad_mc, "."); }) == "mc.n_bins");
}

TEST_CASE("17 significant digits round-trip doubles exactly") {
    std::mt19937_64 eng(16180);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [a, b] = mbci::rng::gaussian_pair(eng);
        const double value = a * std::exp(10.0 * b);
        const auto text = mbci::format_double_17(value);
        CHECK(std::strtod(text.c_str(), nullptr) == value);
    }
    CHECK(mbci::format_double_17(0.5) == "0.5");
    CHECK(mbci::format_double_17(1.0) == "1");
}

TEST_CASE("dumped JSON parses with a standard parser") {
    const auto config = mbci::parse_config(hbt_config(), ".");
    const auto text = mbci::dump_json_17(mbci::config_to_json(config));
    const auto parsed = nlohmann::json::parse(text); // default parser, not ordered_json
    CHECK(parsed["rates"].size() == 2);
    CHECK(parsed["times"][1] == 0.5);
}
