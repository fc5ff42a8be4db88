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

#ifndef MBCI_VALIDATION_HPP
#define MBCI_VALIDATION_HPP

#include <cstdint>
#include <string>

#include "mbci/thermal.hpp"

namespace mbci {

/// Knobs for the random-instance generator used by the validation suites.
struct InstanceDistribution {
    std::size_t min_modes = 2;
    std::size_t max_modes = 7;
    std::size_t max_order = 5;
    double rate_lo = 0.0;
    double rate_hi = 2.0;
    double time_half_span = 2.0; ///< times drawn in [-span, span] / delta_omega
    double omega0 = 10.0;
    double delta_omega = 1.0;
    bool uniform_rates = false;
    bool equal_times = false;
};

/// Haar interferometer, random rates, random port sample and times; fully
/// determined by the seed.
ThermalInstance random_instance(std::uint64_t seed, const InstanceDistribution& dist);

struct SuiteResult {
    std::string suite;
    int trials = 0;
    double max_rel_err = 0.0; ///< worst deviation in suite units (see docs)
    bool pass = false;
    bool retried = false;
    int n_failed = 0;
    std::string failing_config; ///< replay JSON of the first failing instance
};

/// Pairwise agreement of the permutation-sum, permanent-C and
/// configuration-sum routes on random instances (relative tolerance 1e-9,
/// absolute floor 1e-12).
SuiteResult run_equivalence_suite(std::uint64_t seed, int trials);

/// Equal-rate permanent identities by direct enumeration (absolute
/// tolerance 1e-10), over Haar unitaries with M <= 5, N <= 4.
SuiteResult run_identities_suite(std::uint64_t seed, int trials);

/// Monte-Carlo estimates of the 1st- and 2nd-order rates against the
/// discrete-grid analytic values, 3 standard errors per check. A trial
/// passes when both orders agree; the suite tolerates one failing trial in
/// ten (re-sampling marginal failures once) since 3-sigma flukes are
/// expected at the percent level. max_rel_err reports the worst
/// |estimate - analytic| / (3 * std_error), so values <= 1 pass.
SuiteResult run_mc_suite(std::uint64_t seed, int trials, std::uint64_t n_samples = 1'000'000);

inline constexpr double kEquivalenceRelTol = 1e-9;
inline constexpr double kEquivalenceAbsFloor = 1e-12;
inline constexpr double kIdentitiesTol = 1e-10;

/// |a - b| against a relative tolerance with an absolute floor.
bool values_agree(double a, double b, double rel_tol, double abs_floor);
double relative_error(double a, double b);

} // namespace mbci

#endif
