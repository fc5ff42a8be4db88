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

#include "mbci/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mbci/permanent.hpp"
#include "mbci/unitary.hpp"

namespace mbci {

namespace {

using cldouble = std::complex<long double>;

double field_scale(const ThermalInstance& inst) {
    return std::pow(inst.sources.e_const, 2.0 * static_cast<double>(inst.order()));
}

CorrelationResult finalize(cdouble total, Formulation f, std::uint64_t n_terms) {
    CorrelationResult result;
    result.formulation = f;
    result.n_terms = n_terms;
    result.residual_imag = std::abs(total.imag());
    double value = total.real();
    if (value < 0.0 && -value <= kNegativeClampTol * std::max(1.0, std::abs(value))) value = 0.0;
    if (value == 0.0) value = 0.0; // normalize -0
    result.value = value;
    return result;
}

std::size_t port_position(const ThermalInstance& inst, int port) {
    const auto& ports = inst.event.ports;
    const auto it = std::find(ports.begin(), ports.end(), port);
    if (it == ports.end())
        throw ValidationError("port " + std::to_string(port) + " is not in the detection sample");
    return static_cast<std::size_t>(it - ports.begin());
}

/// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> out;
    out.reserve(static_cast<std::size_t>(factorial_u64(static_cast<unsigned>(n))));
    do {
        out.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

} // namespace

std::string formulation_name(Formulation f) {
    switch (f) {
        case Formulation::PermutationSum: return "perm-sum";
        case Formulation::PermanentC: return "per-C";
        case Formulation::ConfigurationSum: return "config-sum";
        case Formulation::EqualTimes: return "equal-times";
        case Formulation::Incoherent: return "incoherent";
        case Formulation::Uncorrelated: return "uncorrelated";
    }
    return "unknown";
}

std::optional<Formulation> formulation_from_name(const std::string& name) {
    if (name == "perm-sum") return Formulation::PermutationSum;
    if (name == "per-C") return Formulation::PermanentC;
    if (name == "config-sum") return Formulation::ConfigurationSum;
    if (name == "equal-times") return Formulation::EqualTimes;
    if (name == "incoherent") return Formulation::Incoherent;
    if (name == "uncorrelated") return Formulation::Uncorrelated;
    return std::nullopt;
}

cdouble g1(const ThermalInstance& inst, int port_d, int port_dprime) {
    const std::size_t i = port_position(inst, port_d);
    const std::size_t j = port_position(inst, port_dprime);
    const double e2 = inst.sources.e_const * inst.sources.e_const;
    if (port_d == port_dprime) {
        // Diagonal entries are exactly real: chi(0) = 1 and the overlap is a
        // sum of squared moduli.
        double diag = 0.0;
        for (std::size_t s = 0; s < inst.modes(); ++s)
            diag += std::norm(inst.amplitude(port_d, s)) * inst.sources.rates[s];
        return cdouble(e2 * diag, 0.0);
    }
    cdouble overlap(0.0, 0.0);
    for (std::size_t s = 0; s < inst.modes(); ++s)
        overlap += std::conj(inst.amplitude(port_d, s)) * inst.sources.rates[s] * inst.amplitude(port_dprime, s);
    return e2 * overlap * chi_function(inst.event.times[j] - inst.event.times[i], inst.sources);
}

CorrelationResult gn_permutation_sum(const ThermalInstance& inst) {
    const std::size_t n = inst.order();
    if (n > kPermutationSumMaxOrder)
        throw SizeLimitError("permutation sum limited to N <= " + std::to_string(kPermutationSumMaxOrder) +
                             ", got N = " + std::to_string(n));
    // Matrix of first-order correlators; its permanent is the result.
    const double e2 = inst.sources.e_const * inst.sources.e_const;
    const ComplexMatrix a = build_a_matrix(inst);
    const ComplexMatrix chi = build_chi_matrix(inst.event, inst.sources);
    ComplexMatrix g1_mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g1_mat(i, j) = e2 * a(i, j) * chi(i, j);

    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    cldouble total(0.0L, 0.0L);
    do {
        cldouble prod(1.0L, 0.0L);
        for (std::size_t i = 0; i < n; ++i) prod *= cldouble(g1_mat(i, sigma[i]));
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    return finalize(cdouble(static_cast<double>(total.real()), static_cast<double>(total.imag())),
                    Formulation::PermutationSum, factorial_u64(static_cast<unsigned>(n)));
}

CorrelationResult gn_permanent_c(const ThermalInstance& inst) {
    const cdouble per = permanent_ryser(build_c_matrix(inst));
    return finalize(field_scale(inst) * per, Formulation::PermanentC, 1);
}

CorrelationResult gn_configuration_sum(const ThermalInstance& inst) {
    const std::size_t n = inst.order();
    if (n > kConfigurationSumMaxOrder)
        throw SizeLimitError("configuration sum limited to N <= " + std::to_string(kConfigurationSumMaxOrder) +
                             ", got N = " + std::to_string(n));
    const ComplexMatrix sampled = sampled_submatrix(inst);
    const ComplexMatrix chi = build_chi_matrix(inst.event, inst.sources);

    // chi products depend on sigma only; precompute once and drop any sigma
    // whose product has underflowed (its contribution is below 1e-300).
    const auto sigmas = all_permutations(n);
    std::vector<cdouble> chi_products(sigmas.size());
    std::vector<bool> keep(sigmas.size());
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        cdouble prod(1.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) prod *= chi(i, sigmas[k][i]);
        chi_products[k] = prod;
        keep[k] = std::abs(prod) >= kChiProductUnderflow;
    }

    cldouble total(0.0L, 0.0L);
    std::uint64_t n_terms = 0;
    for (const auto& labels : MultisetRange(inst.modes(), n)) {
        double rate_product = 1.0;
        for (int c : labels) rate_product *= inst.sources.rates[static_cast<std::size_t>(c - 1)];
        if (rate_product == 0.0) continue; // zero-rate source in the multiset
        const auto config = SourceConfiguration::from_labels(labels, inst.modes());
        cldouble config_sum(0.0L, 0.0L);
        for (std::size_t k = 0; k < sigmas.size(); ++k) {
            if (!keep[k]) continue;
            const cdouble per = permanent_ryser(build_interference_matrix(sampled, config, sigmas[k]));
            config_sum += cldouble(chi_products[k]) * cldouble(per);
            ++n_terms;
        }
        total += static_cast<long double>(config.weight * rate_product) * config_sum;
    }
    total *= static_cast<long double>(field_scale(inst));
    return finalize(cdouble(static_cast<double>(total.real()), static_cast<double>(total.imag())),
                    Formulation::ConfigurationSum, n_terms);
}

CorrelationResult gn_equal_times(const ThermalInstance& inst) {
    const cdouble per = permanent_ryser(build_a_matrix(inst));
    return finalize(field_scale(inst) * per, Formulation::EqualTimes, 1);
}

CorrelationResult gn_equal_times_incoherent(const ThermalInstance& inst) {
    const std::size_t n = inst.order();
    if (n > kConfigurationSumMaxOrder)
        throw SizeLimitError("incoherent sum limited to N <= " + std::to_string(kConfigurationSumMaxOrder) +
                             ", got N = " + std::to_string(n));
    const ComplexMatrix sampled = sampled_submatrix(inst);
    long double total = 0.0L;
    std::uint64_t n_terms = 0;
    for (const auto& labels : MultisetRange(inst.modes(), n)) {
        double rate_product = 1.0;
        for (int c : labels) rate_product *= inst.sources.rates[static_cast<std::size_t>(c - 1)];
        if (rate_product == 0.0) continue;
        const auto config = SourceConfiguration::from_labels(labels, inst.modes());
        const cdouble per = permanent_ryser(build_repeated_column_matrix(sampled, config));
        total += static_cast<long double>(config.weight * rate_product) * std::norm(per);
        ++n_terms;
    }
    total *= static_cast<long double>(field_scale(inst));
    return finalize(cdouble(static_cast<double>(total), 0.0), Formulation::Incoherent, n_terms);
}

CorrelationResult gn_uncorrelated_limit(const ThermalInstance& inst) {
    const ComplexMatrix a = build_a_matrix(inst);
    const double e2 = inst.sources.e_const * inst.sources.e_const;
    long double product = 1.0L;
    for (std::size_t i = 0; i < inst.order(); ++i) product *= static_cast<long double>(e2 * a(i, i).real());
    return finalize(cdouble(static_cast<double>(product), 0.0), Formulation::Uncorrelated, inst.order());
}

CorrelationResult evaluate(const ThermalInstance& inst, Formulation f) {
    switch (f) {
        case Formulation::PermutationSum: return gn_permutation_sum(inst);
        case Formulation::PermanentC: return gn_permanent_c(inst);
        case Formulation::ConfigurationSum: return gn_configuration_sum(inst);
        case Formulation::EqualTimes: return gn_equal_times(inst);
        case Formulation::Incoherent: return gn_equal_times_incoherent(inst);
        case Formulation::Uncorrelated: return gn_uncorrelated_limit(inst);
    }
    throw ValidationError("unknown formulation");
}

ComplexMatrix build_interference_matrix(const ComplexMatrix& sampled, const SourceConfiguration& config,
                                        const std::vector<std::size_t>& sigma) {
    const std::size_t n = sampled.rows();
    if (config.labels.size() != n || sigma.size() != n)
        throw DimensionError("interference matrix requires |labels| = |sigma| = sample order");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto col = static_cast<std::size_t>(config.labels[j] - 1);
            m(i, j) = std::conj(sampled(i, col)) * sampled(sigma[i], col);
        }
    }
    return m;
}

ComplexMatrix build_repeated_column_matrix(const ComplexMatrix& sampled, const SourceConfiguration& config) {
    const std::size_t n = sampled.rows();
    if (config.labels.size() != n)
        throw DimensionError("repeated-column matrix requires |labels| = sample order");
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto col = static_cast<std::size_t>(config.labels[j] - 1);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = sampled(i, col);
    }
    return m;
}

EqualRateIdentityReport verify_equal_rate_identities(const ComplexMatrix& unitary, const std::vector<int>& ports,
                                                     double tol) {
    if (!unitary.is_square()) throw DimensionError("identity check requires a square matrix");
    const std::size_t m = unitary.rows();
    const std::size_t n = ports.size();
    if (n > kIdentityCheckMaxOrder || m > kIdentityCheckMaxModes)
        throw SizeLimitError("identity check limited to N <= " + std::to_string(kIdentityCheckMaxOrder) +
                             ", M <= " + std::to_string(kIdentityCheckMaxModes));
    if (!unitary.all_finite() || unitarity_residual(unitary) > kUnitarityTol)
        throw ValidationError("identity check requires a unitary matrix (1e-10)");
    std::vector<bool> seen(m, false);
    ComplexMatrix sampled(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const int p = ports[i];
        if (p < 1 || static_cast<std::size_t>(p) > m) throw ValidationError("identity check: port outside [1, M]");
        if (seen[static_cast<std::size_t>(p - 1)]) throw ValidationError("identity check: duplicate port");
        seen[static_cast<std::size_t>(p - 1)] = true;
        for (std::size_t s = 0; s < m; ++s) sampled(i, s) = unitary(static_cast<std::size_t>(p - 1), s);
    }

    const auto sigmas = all_permutations(n);
    std::vector<cldouble> sigma_sums(sigmas.size(), cldouble(0.0L, 0.0L));
    long double incoherent_sum = 0.0L;
    std::uint64_t n_configs = 0;
    for (const auto& labels : MultisetRange(m, n)) {
        const auto config = SourceConfiguration::from_labels(labels, m);
        ++n_configs;
        for (std::size_t k = 0; k < sigmas.size(); ++k) {
            const cdouble per = permanent_ryser(build_interference_matrix(sampled, config, sigmas[k]));
            sigma_sums[k] += static_cast<long double>(config.weight) * cldouble(per);
        }
        const cdouble per_cols = permanent_ryser(build_repeated_column_matrix(sampled, config));
        incoherent_sum += static_cast<long double>(config.weight) * std::norm(per_cols);
    }

    EqualRateIdentityReport report;
    report.modes = m;
    report.order = n;
    report.tol = tol;
    report.n_configurations = n_configs;
    report.n_permutations = sigmas.size();
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        const bool is_identity = std::is_sorted(sigmas[k].begin(), sigmas[k].end());
        const cldouble expected = is_identity ? cldouble(1.0L, 0.0L) : cldouble(0.0L, 0.0L);
        const double dev = static_cast<double>(std::abs(sigma_sums[k] - expected));
        if (is_identity) {
            report.dev_identity_sigma = dev;
        } else {
            report.max_dev_other_sigma = std::max(report.max_dev_other_sigma, dev);
        }
    }
    report.dev_incoherent_sum = static_cast<double>(std::abs(incoherent_sum - 1.0L));
    report.max_dev = std::max({report.dev_identity_sigma, report.max_dev_other_sigma, report.dev_incoherent_sum});
    report.pass = report.max_dev <= tol;
    return report;
}

} // namespace mbci
