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

#include "mbci/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "mbci/config_io.hpp"
#include "mbci/correlators.hpp"
#include "mbci/mc_oracle.hpp"
#include "mbci/rng.hpp"
#include "mbci/unitary.hpp"

namespace mbci {

bool values_agree(double a, double b, double rel_tol, double abs_floor) {
    return std::abs(a - b) <= std::max(rel_tol * std::max(std::abs(a), std::abs(b)), abs_floor);
}

double relative_error(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

ThermalInstance random_instance(std::uint64_t seed, const InstanceDistribution& dist) {
    std::mt19937_64 eng(rng::splitmix64(seed));
    const auto modes = static_cast<std::size_t>(
        rng::uniform_int(eng, static_cast<std::int64_t>(dist.min_modes), static_cast<std::int64_t>(dist.max_modes)));
    const auto order = static_cast<std::size_t>(
        rng::uniform_int(eng, 1, static_cast<std::int64_t>(std::min(dist.max_order, modes))));

    ThermalInstance inst;
    UnitarySpec uspec;
    uspec.dimension = modes;
    uspec.construction = UnitaryConstruction::HaarRandom;
    uspec.seed = rng::derive_seed(seed, 1);
    inst.unitary = random_unitary(uspec);

    inst.sources.omega0 = dist.omega0;
    inst.sources.delta_omega = dist.delta_omega;
    inst.sources.rates.resize(modes);
    if (dist.uniform_rates) {
        const double r = rng::uniform(eng, std::max(dist.rate_lo, 0.05), dist.rate_hi);
        std::fill(inst.sources.rates.begin(), inst.sources.rates.end(), r);
    } else {
        for (auto& r : inst.sources.rates) r = rng::uniform(eng, dist.rate_lo, dist.rate_hi);
    }

    // Fisher-Yates over the port list, keep the first `order` entries.
    std::vector<int> ports(modes);
    std::iota(ports.begin(), ports.end(), 1);
    for (std::size_t i = 0; i < order; ++i) {
        const auto j = static_cast<std::size_t>(
            rng::uniform_int(eng, static_cast<std::int64_t>(i), static_cast<std::int64_t>(modes - 1)));
        std::swap(ports[i], ports[j]);
    }
    ports.resize(order);
    inst.event.ports = ports;
    inst.event.times.resize(order);
    for (auto& t : inst.event.times)
        t = dist.equal_times ? 0.0
                             : rng::uniform(eng, -dist.time_half_span, dist.time_half_span) / dist.delta_omega;
    inst.validate();
    return inst;
}

SuiteResult run_equivalence_suite(std::uint64_t seed, int trials) {
    SuiteResult result;
    result.suite = "equivalence";
    result.trials = trials;
    InstanceDistribution dist;
    for (int trial = 0; trial < trials; ++trial) {
        const auto inst = random_instance(rng::derive_seed(seed, static_cast<std::uint64_t>(trial)), dist);
        const double a = gn_permutation_sum(inst).value;
        const double b = gn_permanent_c(inst).value;
        const double c = gn_configuration_sum(inst).value;
        const double worst = std::max({relative_error(a, b), relative_error(a, c), relative_error(b, c)});
        result.max_rel_err = std::max(result.max_rel_err, worst);
        const bool ok = values_agree(a, b, kEquivalenceRelTol, kEquivalenceAbsFloor) &&
                        values_agree(a, c, kEquivalenceRelTol, kEquivalenceAbsFloor) &&
                        values_agree(b, c, kEquivalenceRelTol, kEquivalenceAbsFloor);
        if (!ok) {
            ++result.n_failed;
            if (result.failing_config.empty()) result.failing_config = dump_json_17(instance_to_config_json(inst));
        }
    }
    result.pass = result.n_failed == 0;
    return result;
}

SuiteResult run_identities_suite(std::uint64_t seed, int trials) {
    SuiteResult result;
    result.suite = "identities";
    result.trials = trials;
    InstanceDistribution dist;
    dist.min_modes = 2;
    dist.max_modes = 5;
    dist.max_order = 4;
    for (int trial = 0; trial < trials; ++trial) {
        // Draw an instance purely for its unitary and port sample.
        const auto inst = random_instance(rng::derive_seed(seed, static_cast<std::uint64_t>(trial)), dist);
        const auto report = verify_equal_rate_identities(inst.unitary, inst.event.ports, kIdentitiesTol);
        result.max_rel_err = std::max(result.max_rel_err, report.max_dev);
        if (!report.pass) {
            ++result.n_failed;
            if (result.failing_config.empty()) result.failing_config = dump_json_17(instance_to_config_json(inst));
        }
    }
    result.pass = result.n_failed == 0;
    return result;
}

namespace {

struct McTrialOutcome {
    bool pass = false;
    double worst_sigma_ratio = 0.0; ///< |estimate - analytic| / (3 SE)
};

McTrialOutcome mc_trial(const ThermalInstance& inst, std::uint64_t mc_seed, std::uint64_t n_samples) {
    McTrialOutcome outcome;
    outcome.pass = true;
    const FrequencyGrid grid(inst.sources);
    for (std::size_t order = 1; order <= std::min<std::size_t>(2, inst.order()); ++order) {
        ThermalInstance sub = inst;
        sub.event.ports.assign(inst.event.ports.begin(), inst.event.ports.begin() + static_cast<long>(order));
        sub.event.times.assign(inst.event.times.begin(), inst.event.times.begin() + static_cast<long>(order));
        const double analytic = gn_on_grid(sub, grid);
        const auto est = estimate_gn(sub, grid, n_samples, rng::derive_seed(mc_seed, order));
        const double band = 3.0 * est.std_error;
        const double ratio = band > 0.0 ? std::abs(est.mean - analytic) / band
                                        : (est.mean == analytic ? 0.0 : std::numeric_limits<double>::infinity());
        outcome.worst_sigma_ratio = std::max(outcome.worst_sigma_ratio, ratio);
        if (ratio > 1.0) outcome.pass = false;
    }
    return outcome;
}

} // namespace

SuiteResult run_mc_suite(std::uint64_t seed, int trials, std::uint64_t n_samples) {
    SuiteResult result;
    result.suite = "mc";
    result.trials = trials;
    InstanceDistribution dist;
    dist.min_modes = 2;
    dist.max_modes = 4;
    dist.max_order = 2;
    dist.rate_lo = 0.2;
    dist.time_half_span = 1.0;
    const int allowed_failures = trials / 10;
    for (int trial = 0; trial < trials; ++trial) {
        const auto trial_seed = rng::derive_seed(seed, static_cast<std::uint64_t>(trial));
        auto inst = random_instance(trial_seed, dist);
        if (inst.order() < 2 && inst.modes() >= 2) {
            // Always exercise both the 1st- and 2nd-order estimators.
            inst.event.ports = {inst.event.ports[0], inst.event.ports[0] % static_cast<int>(inst.modes()) + 1};
            inst.event.times.push_back(0.0);
        }
        auto outcome = mc_trial(inst, rng::derive_seed(trial_seed, 100), n_samples);
        if (!outcome.pass) {
            // 3-sigma flukes happen; one re-sample with a fresh seed
            // distinguishes them from systematic disagreement.
            result.retried = true;
            outcome = mc_trial(inst, rng::derive_seed(trial_seed, 200), n_samples);
        }
        result.max_rel_err = std::max(result.max_rel_err, outcome.worst_sigma_ratio);
        if (!outcome.pass) {
            ++result.n_failed;
            if (result.failing_config.empty()) result.failing_config = dump_json_17(instance_to_config_json(inst));
        }
    }
    result.pass = result.n_failed <= allowed_failures;
    return result;
}

} // namespace mbci
