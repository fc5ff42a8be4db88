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

// Command-line front end. Exit codes are a stable contract:
//   0 success, 1 validation-suite failure, 2 configuration error,
//   3 size-guard violation.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mbci/config_io.hpp"
#include "mbci/correlators.hpp"
#include "mbci/mc_oracle.hpp"
#include "mbci/permanent.hpp"
#include "mbci/rng.hpp"
#include "mbci/unitary.hpp"
#include "mbci/validation.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSizeGuard = 3;

std::optional<std::uint64_t> env_seed_override() {
    const char* raw = std::getenv("THERMAL_MBCI_SEED");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    char* end = nullptr;
    const auto value = std::strtoull(raw, &end, 10);
    if (end == nullptr || *end != '\0') {
        std::cerr << "warning: ignoring non-numeric THERMAL_MBCI_SEED\n";
        return std::nullopt;
    }
    return value;
}

mbci::ExperimentConfig load_config(const std::string& path) {
    auto config = mbci::load_config_file(path);
    if (const auto seed = env_seed_override()) {
        if (config.unitary.construction == mbci::UnitaryConstruction::HaarRandom) config.unitary.seed = *seed;
        if (config.mc) config.mc->seed = *seed;
    }
    if (!config.sources.narrowband())
        std::cerr << "warning: delta_omega/omega0 = " << config.sources.delta_omega / config.sources.omega0
                  << " exceeds the narrow-band ratio 0.1; results lose physical accuracy\n";
    return config;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mbci::ValidationError("cannot open output file " + out_path);
    out << text;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) line.push_back(',');
        line += fields[i];
    }
    line += "\r\n"; // RFC 4180
    return line;
}

double normalization_denominator(const mbci::ThermalInstance& inst) {
    double denom = 1.0;
    for (int p : inst.event.ports) denom *= mbci::g1(inst, p, p).real();
    return denom;
}

int cmd_gen_unitary(std::size_t dim, std::uint64_t seed, const std::string& preset, const std::string& out_path) {
    mbci::UnitarySpec spec;
    spec.dimension = dim;
    if (const auto env = env_seed_override()) seed = *env;
    spec.seed = seed;
    if (!preset.empty()) {
        const auto construction = mbci::construction_from_name(preset);
        if (!construction || *construction == mbci::UnitaryConstruction::HaarRandom ||
            *construction == mbci::UnitaryConstruction::ExplicitEntries)
            throw mbci::ConfigError("preset", "unknown preset '" + preset +
                                                  "' (expected identity | balanced-beamsplitter | discrete-fourier)");
        spec.construction = *construction;
    }
    const auto u = mbci::random_unitary(spec);
    const auto doc = mbci::unitary_to_json(
        u, spec.construction,
        spec.construction == mbci::UnitaryConstruction::HaarRandom ? std::optional<std::uint64_t>(seed)
                                                                   : std::nullopt);
    write_output(mbci::dump_json_17(doc), out_path);
    return kExitSuccess;
}

int cmd_gn(const std::string& config_path, const std::string& formulation_name, bool with_mc,
           const std::string& out_path) {
    auto config = load_config(config_path);
    if (!formulation_name.empty()) {
        const auto f = mbci::formulation_from_name(formulation_name);
        if (!f) throw mbci::ConfigError("formulation", "unknown formulation '" + formulation_name + "'");
        config.formulation = *f;
    }
    const auto inst = config.instance();

    const auto start = std::chrono::steady_clock::now();
    const auto result = mbci::evaluate(inst, config.formulation);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const double denom = normalization_denominator(inst);
    const double normalized = denom > 0.0 ? result.value / denom : std::nan("");

    mbci::ordered_json doc;
    doc["value"] = result.value;
    doc["formulation"] = mbci::formulation_name(result.formulation);
    doc["residual_imag"] = result.residual_imag;
    doc["n_terms"] = result.n_terms;
    doc["wall_time_ms"] = wall_ms;
    doc["g_n_normalized"] = normalized;

    if (with_mc) {
        const auto mc = config.mc.value_or(mbci::McSettings{});
        const mbci::FrequencyGrid grid(inst.sources, mc.n_bins, mc.span_sigmas);
        if (inst.order() > 3) std::cerr << "warning: MC estimator variance grows steeply past N = 3\n";
        const auto est = mbci::estimate_gn(inst, grid, mc.n_samples, mc.seed);
        const double grid_value = mbci::gn_on_grid(inst, grid);
        doc["mc"] = mbci::ordered_json{{"mean", est.mean},
                                       {"std_error", est.std_error},
                                       {"n_samples", est.n_samples},
                                       {"seed", est.seed},
                                       {"grid_value", grid_value},
                                       {"sigma_distance", est.std_error > 0.0
                                                              ? std::abs(est.mean - grid_value) / est.std_error
                                                              : 0.0}};
    }

    if (config.output == mbci::OutputFormat::Csv) {
        std::string text = csv_line({"value", "formulation", "residual_imag", "n_terms", "wall_time_ms",
                                     "g_n_normalized"});
        text += csv_line({mbci::format_double_17(result.value), mbci::formulation_name(result.formulation),
                          mbci::format_double_17(result.residual_imag), std::to_string(result.n_terms),
                          mbci::format_double_17(wall_ms), mbci::format_double_17(normalized)});
        write_output(text, out_path);
    } else {
        write_output(mbci::dump_json_17(doc), out_path);
    }
    return kExitSuccess;
}

int cmd_scan(const std::string& config_path, const std::vector<std::string>& vary, double from, double to,
             std::size_t steps, const std::string& out_path) {
    if (vary.size() != 2 || vary[0] != "time-of-port")
        throw mbci::ConfigError("vary", "expected --vary time-of-port <port>");
    const int port = std::stoi(vary[1]);
    if (steps < 1) throw mbci::ConfigError("steps", "must be >= 1");

    auto config = load_config(config_path);
    auto inst = config.instance();
    const auto it = std::find(inst.event.ports.begin(), inst.event.ports.end(), port);
    if (it == inst.event.ports.end())
        throw mbci::ConfigError("vary", "port " + std::to_string(port) + " is not in the detection sample");
    const auto position = static_cast<std::size_t>(it - inst.event.ports.begin());

    const double denom = normalization_denominator(inst);
    std::string text = csv_line({"tau", "g_n", "g_n_normalized"});
    for (std::size_t k = 0; k <= steps; ++k) {
        const double tau = from + (to - from) * static_cast<double>(k) / static_cast<double>(steps);
        inst.event.times[position] = tau;
        const auto result = mbci::evaluate(inst, config.formulation);
        const double normalized = denom > 0.0 ? result.value / denom : std::nan("");
        text += csv_line(
            {mbci::format_double_17(tau), mbci::format_double_17(result.value), mbci::format_double_17(normalized)});
    }
    write_output(text, out_path);
    return kExitSuccess;
}

int cmd_validate(const std::string& suite, std::uint64_t seed, int trials, std::uint64_t mc_samples) {
    if (const auto env = env_seed_override()) seed = *env;
    std::vector<mbci::SuiteResult> results;
    if (suite == "equivalence" || suite == "all")
        results.push_back(mbci::run_equivalence_suite(seed, trials > 0 ? trials : 100));
    if (suite == "identities" || suite == "all")
        results.push_back(mbci::run_identities_suite(seed, trials > 0 ? trials : 20));
    if (suite == "mc" || suite == "all") results.push_back(mbci::run_mc_suite(seed, trials > 0 ? trials : 10, mc_samples));
    if (results.empty())
        throw mbci::ConfigError("suite", "unknown suite '" + suite + "' (expected equivalence | identities | mc | all)");

    std::printf("%-12s %8s %14s %6s\n", "suite", "trials", "max_err", "pass");
    bool all_pass = true;
    double max_err = 0.0;
    int total_trials = 0;
    for (const auto& r : results) {
        std::printf("%-12s %8d %14.3e %6s\n", r.suite.c_str(), r.trials, r.max_rel_err, r.pass ? "yes" : "NO");
        all_pass = all_pass && r.pass;
        max_err = std::max(max_err, r.max_rel_err);
        total_trials += r.trials;
        if (!r.pass && !r.failing_config.empty())
            std::cerr << "failing instance (" << r.suite << "), replay config:\n" << r.failing_config;
    }

    mbci::ordered_json summary;
    summary["suite"] = suite;
    summary["trials"] = total_trials;
    summary["max_rel_err"] = max_err;
    summary["pass"] = all_pass;
    std::cout << mbci::dump_json_17(summary);
    return all_pass ? kExitSuccess : kExitValidationFailure;
}

int cmd_bench(const std::string& kernel, const std::vector<std::size_t>& sizes, int reps,
              const std::string& out_path) {
    if (kernel != "ryser" && kernel != "naive")
        throw mbci::ConfigError("kernel", "unknown kernel '" + kernel + "' (expected ryser | naive)");
    const bool use_ryser = kernel == "ryser";

    std::string text = csv_line({"kernel", "n", "median_ns", "evals_per_s"});
    for (const std::size_t n : sizes) {
        if ((use_ryser && n > mbci::kRyserPermanentMaxDim) || (!use_ryser && n > mbci::kNaivePermanentMaxDim))
            throw mbci::SizeLimitError("benchmark size " + std::to_string(n) + " exceeds the " + kernel + " guard");
        std::mt19937_64 eng(n * 7919 + 1);
        mbci::ComplexMatrix m(n, n);
        for (auto& e : m.entries()) {
            const auto [re, im] = mbci::rng::gaussian_pair(eng);
            e = mbci::cdouble(re, im);
        }

        // Batch calls until one measurement costs ~1 ms, then take the
        // median per-call time over the repetitions.
        volatile double sink = 0.0;
        const auto run_once = [&] {
            const auto per = use_ryser ? mbci::permanent_ryser(m) : mbci::permanent_naive(m);
            sink = sink + per.real();
        };
        std::size_t batch = 1;
        for (;;) {
            const auto t0 = std::chrono::steady_clock::now();
            for (std::size_t k = 0; k < batch; ++k) run_once();
            const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            if (ns >= 1'000'000 || batch >= (1u << 20)) break;
            batch *= 2;
        }
        std::vector<double> samples;
        for (int r = 0; r < std::max(reps, 5); ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            for (std::size_t k = 0; k < batch; ++k) run_once();
            const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            samples.push_back(static_cast<double>(ns) / static_cast<double>(batch));
        }
        std::sort(samples.begin(), samples.end());
        const double median_ns = samples[samples.size() / 2];
        text += csv_line({kernel, std::to_string(n), mbci::format_double_17(median_ns),
                          mbci::format_double_17(1e9 / median_ns)});
    }
    write_output(text, out_path);
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detection-rate calculator for thermal light in passive linear interferometers"};
    app.require_subcommand(1);

    // gen-unitary
    auto* gen = app.add_subcommand("gen-unitary", "Generate an interferometer matrix file");
    std::size_t gen_dim = 2;
    std::uint64_t gen_seed = 0;
    std::string gen_preset;
    std::string gen_out;
    gen->add_option("--dim", gen_dim, "Matrix dimension M")->required();
    gen->add_option("--seed", gen_seed, "Seed for the Haar-random draw");
    gen->add_option("--preset", gen_preset, "identity | balanced-beamsplitter | discrete-fourier");
    gen->add_option("--out,-o", gen_out, "Output file (default stdout)");

    // gn
    auto* gn = app.add_subcommand("gn", "Evaluate the N-fold detection rate for a config");
    std::string gn_config;
    std::string gn_formulation;
    std::string gn_out;
    bool gn_with_mc = false;
    gn->add_option("config", gn_config, "Experiment config JSON")->required();
    gn->add_option("--formulation", gn_formulation,
                   "perm-sum | per-C | config-sum | equal-times | incoherent | uncorrelated");
    gn->add_flag("--mc", gn_with_mc, "Append a Monte-Carlo cross-check using the config's mc settings");
    gn->add_option("--out,-o", gn_out, "Output file (default stdout)");

    // scan
    auto* scan = app.add_subcommand("scan", "Sweep one detection time and emit CSV");
    std::string scan_config;
    std::vector<std::string> scan_vary;
    double scan_from = 0.0;
    double scan_to = 1.0;
    std::size_t scan_steps = 50;
    std::string scan_out;
    scan->add_option("config", scan_config, "Experiment config JSON")->required();
    scan->add_option("--vary", scan_vary, "time-of-port <port>")->expected(2)->required();
    scan->add_option("--from", scan_from, "Start of the sweep (absolute time)")->required();
    scan->add_option("--to", scan_to, "End of the sweep (absolute time)")->required();
    scan->add_option("--steps", scan_steps, "Number of intervals (rows = steps + 1)");
    scan->add_option("--out,-o", scan_out, "Output file (default stdout)");

    // validate
    auto* validate = app.add_subcommand("validate", "Run the self-validation suites");
    std::string validate_suite = "all";
    std::uint64_t validate_seed = 1;
    int validate_trials = 0;
    std::uint64_t validate_mc_samples = 1'000'000;
    validate->add_option("--suite", validate_suite, "equivalence | identities | mc | all");
    validate->add_option("--seed", validate_seed, "Master seed");
    validate->add_option("--trials", validate_trials, "Trial count (0 = suite default)");
    validate->add_option("--mc-samples", validate_mc_samples, "Samples per MC estimate");

    // bench
    auto* bench = app.add_subcommand("bench", "Time the permanent kernels");
    std::string bench_kernel = "ryser";
    std::vector<std::size_t> bench_sizes{4, 8, 12, 16};
    int bench_reps = 5;
    std::string bench_out;
    bench->add_option("--kernel", bench_kernel, "ryser | naive");
    bench->add_option("--sizes", bench_sizes, "Matrix sizes to time")->delimiter(',');
    bench->add_option("--reps", bench_reps, "Repetitions per size (>= 5)");
    bench->add_option("--out,-o", bench_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen_unitary(gen_dim, gen_seed, gen_preset, gen_out);
        if (gn->parsed()) return cmd_gn(gn_config, gn_formulation, gn_with_mc, gn_out);
        if (scan->parsed()) return cmd_scan(scan_config, scan_vary, scan_from, scan_to, scan_steps, scan_out);
        if (validate->parsed())
            return cmd_validate(validate_suite, validate_seed, validate_trials, validate_mc_samples);
        if (bench->parsed()) return cmd_bench(bench_kernel, bench_sizes, bench_reps, bench_out);
    } catch (const mbci::SizeLimitError& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const mbci::ConfigError& e) {
        std::cerr << "config error at " << e.field() << ": " << e.what() << "\n";
        return kExitConfigError;
    } catch (const mbci::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitSuccess;
}
