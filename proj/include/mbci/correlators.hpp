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

#ifndef MBCI_CORRELATORS_HPP
#define MBCI_CORRELATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbci/configurations.hpp"
#include "mbci/thermal.hpp"

namespace mbci {

inline constexpr std::size_t kPermutationSumMaxOrder = 10;
inline constexpr std::size_t kConfigurationSumMaxOrder = 8;
inline constexpr std::size_t kIdentityCheckMaxOrder = 6;
inline constexpr std::size_t kIdentityCheckMaxModes = 8;
inline constexpr double kNegativeClampTol = 1e-9;
inline constexpr double kChiProductUnderflow = 1e-300;

/// The mathematically equivalent routes to the N-fold detection rate, plus
/// its limit cases.
enum class Formulation {
    PermutationSum,   ///< sum over permutations of first-order correlators
    PermanentC,       ///< single permanent of the C matrix
    ConfigurationSum, ///< weighted sum over source configurations
    EqualTimes,       ///< permanent of A (all detection times coincide)
    Incoherent,       ///< equal-times incoherent sum of |per U_S|^2
    Uncorrelated,     ///< product of diagonal first-order correlators
};

std::string formulation_name(Formulation f);
std::optional<Formulation> formulation_from_name(const std::string& name);

/// An N-fold detection probability rate in units e_const^(2N). The permanent
/// of the positive semi-definite C matrix is real in exact arithmetic; the
/// imaginary residue left by floating point is kept as a diagnostic instead
/// of silently dropped. Values within kNegativeClampTol below zero are
/// clamped to 0.
struct CorrelationResult {
    double value = 0.0;
    Formulation formulation = Formulation::PermanentC;
    double residual_imag = 0.0;
    std::uint64_t n_terms = 0;
};

/// First-order correlator between two sampled ports (1-based, both must be
/// in the detection sample): e^2 * sum_s conj(u(d,s)) u(d',s) r_s *
/// chi(t_{d'} - t_d).
cdouble g1(const ThermalInstance& inst, int port_d, int port_dprime);

/// Exact sum over all N! permutations of products of first-order
/// correlators. Guarded at N <= 10.
CorrelationResult gn_permutation_sum(const ThermalInstance& inst);

/// e^(2N) times the permanent of C = A (hadamard) chi. The workhorse
/// formulation: one permanent, N <= 30.
CorrelationResult gn_permanent_c(const ThermalInstance& inst);

/// Sum over source configurations S of
///   weight(S) * prod_{c in S} r_c *
///   sum_sigma [prod_d chi(t_{sigma(d)} - t_d)] * per M(S, sigma),
/// with M(S, sigma) the interference matrix below. Configurations containing
/// a zero-rate source are pruned before any permanent is evaluated, and a
/// sigma whose chi product underflows below 1e-300 is skipped. N <= 8.
CorrelationResult gn_configuration_sum(const ThermalInstance& inst);

/// e^(2N) * per A: the detection rate when all times coincide (the stored
/// times are ignored).
CorrelationResult gn_equal_times(const ThermalInstance& inst);

/// Equal-times rate as the incoherent sum over configurations of
/// weight(S) * prod r_c * |per U_S|^2, with U_S the repeated-column matrix.
CorrelationResult gn_equal_times_incoherent(const ThermalInstance& inst);

/// Product of the diagonal first-order correlators: the rate when all
/// detection separations are far outside the coherence time.
CorrelationResult gn_uncorrelated_limit(const ThermalInstance& inst);

CorrelationResult evaluate(const ThermalInstance& inst, Formulation f);

/// Interference matrix for a configuration and a permutation sigma of the
/// detector positions: entry (i, j) = conj(u(D_i, c_j)) * u(D_sigma(i), c_j)
/// where c_j runs over the nondecreasing label multiset.
ComplexMatrix build_interference_matrix(const ComplexMatrix& sampled, const SourceConfiguration& config,
                                        const std::vector<std::size_t>& sigma);

/// N x N matrix whose j-th column is column c_j of the sampled submatrix
/// (repeats included).
ComplexMatrix build_repeated_column_matrix(const ComplexMatrix& sampled, const SourceConfiguration& config);

/// Deviations of the two equal-rate permanent sums from their closed forms:
/// sum_S weight(S) per M(S, sigma) is 1 for sigma = identity and 0
/// otherwise, and sum_S weight(S) |per U_S|^2 is 1. Both checked by direct
/// enumeration over every sigma. Guarded at N <= 6, M <= 8.
struct EqualRateIdentityReport {
    std::size_t modes = 0;
    std::size_t order = 0;
    double dev_identity_sigma = 0.0;     ///< |sum - 1| at sigma = identity
    double max_dev_other_sigma = 0.0;    ///< max |sum| over sigma != identity
    double dev_incoherent_sum = 0.0;     ///< |sum of weighted |per|^2 - 1|
    double max_dev = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::uint64_t n_configurations = 0;
    std::uint64_t n_permutations = 0;
};

EqualRateIdentityReport verify_equal_rate_identities(const ComplexMatrix& unitary, const std::vector<int>& ports,
                                                     double tol);

} // namespace mbci

#endif
