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

#include "mbci/mc_oracle.hpp"

#include <cmath>
#include <string>

#include "mbci/permanent.hpp"
#include "mbci/rng.hpp"

namespace mbci {

FrequencyGrid::FrequencyGrid(const SourceBank& sources, std::size_t n_bins, double span_sigmas)
    : span_sigmas_(span_sigmas) {
    if (n_bins < 8) throw ValidationError("frequency grid requires n_bins >= 8");
    if (span_sigmas < 3.0) throw ValidationError("frequency grid requires span_sigmas >= 3");
    const double lo = sources.omega0 - span_sigmas * sources.delta_omega;
    const double hi = sources.omega0 + span_sigmas * sources.delta_omega;
    bin_width_ = (hi - lo) / static_cast<double>(n_bins);
    centers_.resize(n_bins);
    weights_.resize(n_bins);
    double total = 0.0;
    for (std::size_t j = 0; j < n_bins; ++j) {
        centers_[j] = lo + (static_cast<double>(j) + 0.5) * bin_width_;
        weights_[j] = gaussian_spectral_density(centers_[j], sources.omega0, sources.delta_omega) * bin_width_;
        total += weights_[j];
    }
    normalization_ = total;
    if (normalization_ < 0.995 || normalization_ > 1.0)
        throw ValidationError("frequency grid misses spectral weight: sum f(omega_j) d_omega = " +
                              std::to_string(normalization_));
}

cdouble FrequencyGrid::grid_chi(double u) const {
    cdouble acc(0.0, 0.0);
    for (std::size_t j = 0; j < centers_.size(); ++j) acc += weights_[j] * std::polar(1.0, -centers_[j] * u);
    return acc;
}

namespace {

/// Quadrature widths per (source, bin): mean |alpha|^2 = rate * weight, half
/// in each quadrature.
std::vector<double> quadrature_sigmas(const SourceBank& sources, const FrequencyGrid& grid) {
    const std::size_t bins = grid.n_bins();
    std::vector<double> sigmas(sources.modes() * bins);
    for (std::size_t s = 0; s < sources.modes(); ++s)
        for (std::size_t j = 0; j < bins; ++j)
            sigmas[s * bins + j] = std::sqrt(0.5 * sources.rates[s] * grid.weight(j));
    return sigmas;
}

void sample_amplitudes_with_sigmas(const std::vector<double>& sigmas, std::mt19937_64& eng,
                                   std::vector<cdouble>& amplitudes) {
    amplitudes.resize(sigmas.size());
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        const auto [g_re, g_im] = rng::gaussian_pair(eng);
        amplitudes[k] = cdouble(sigmas[k] * g_re, sigmas[k] * g_im);
    }
}

} // namespace

void sample_amplitudes(const SourceBank& sources, const FrequencyGrid& grid, std::mt19937_64& eng,
                       std::vector<cdouble>& amplitudes) {
    sample_amplitudes_with_sigmas(quadrature_sigmas(sources, grid), eng, amplitudes);
}

namespace {

/// Field mixing against a precomputed phase row e^{-i omega_j t}.
cdouble field_mix(const std::vector<cdouble>& amplitudes, const ThermalInstance& inst, std::size_t bins, int port,
                  const cdouble* phases) {
    cdouble total(0.0, 0.0);
    for (std::size_t s = 0; s < inst.modes(); ++s) {
        cdouble mode_sum(0.0, 0.0);
        const cdouble* alpha = &amplitudes[s * bins];
        for (std::size_t j = 0; j < bins; ++j) mode_sum += alpha[j] * phases[j];
        total += inst.amplitude(port, s) * mode_sum;
    }
    return cdouble(0.0, inst.sources.e_const) * total;
}

} // namespace

cdouble field_at_detector(const std::vector<cdouble>& amplitudes, const ThermalInstance& inst,
                          const FrequencyGrid& grid, int port, double t) {
    const std::size_t bins = grid.n_bins();
    if (amplitudes.size() != inst.modes() * bins)
        throw DimensionError("amplitude array must have modes * n_bins entries");
    std::vector<cdouble> phases(bins);
    for (std::size_t j = 0; j < bins; ++j) phases[j] = std::polar(1.0, -grid.center(j) * t);
    return field_mix(amplitudes, inst, bins, port, phases.data());
}

McEstimate estimate_gn(const ThermalInstance& inst, const FrequencyGrid& grid, std::uint64_t n_samples,
                       std::uint64_t seed) {
    if (n_samples < kMinMcSamples)
        throw ValidationError("estimate_gn requires n_samples >= " + std::to_string(kMinMcSamples));
    const std::size_t n = inst.order();
    const std::size_t bins = grid.n_bins();

    // Phase factors are sample independent; one row per detector.
    std::vector<cdouble> phases(n * bins);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < bins; ++j)
            phases[i * bins + j] = std::polar(1.0, -grid.center(j) * inst.event.times[i]);

    const auto sigmas = quadrature_sigmas(inst.sources, grid);
    long double sum = 0.0L;
    long double sum_sq = 0.0L;
    std::vector<cdouble> amplitudes;
    const std::uint64_t n_blocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
    std::uint64_t drawn = 0;
    for (std::uint64_t block = 0; block < n_blocks; ++block) {
        std::mt19937_64 eng(rng::derive_seed(seed, block));
        const std::uint64_t block_count = std::min(kMcBlockSize, n_samples - drawn);
        long double block_sum = 0.0L;
        long double block_sum_sq = 0.0L;
        for (std::uint64_t k = 0; k < block_count; ++k) {
            sample_amplitudes_with_sigmas(sigmas, eng, amplitudes);
            double product = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const cdouble field =
                    field_mix(amplitudes, inst, bins, inst.event.ports[i], &phases[i * bins]);
                product *= std::norm(field);
            }
            block_sum += product;
            block_sum_sq += static_cast<long double>(product) * product;
        }
        sum += block_sum;
        sum_sq += block_sum_sq;
        drawn += block_count;
    }

    McEstimate est;
    est.n_samples = n_samples;
    est.seed = seed;
    const auto count = static_cast<long double>(n_samples);
    const long double mean = sum / count;
    const long double variance = std::max(0.0L, (sum_sq - count * mean * mean) / (count - 1.0L));
    est.mean = static_cast<double>(mean);
    est.std_error = static_cast<double>(std::sqrt(variance / count));
    return est;
}

ComplexMatrix build_c_matrix_on_grid(const ThermalInstance& inst, const FrequencyGrid& grid) {
    const std::size_t n = inst.order();
    const ComplexMatrix a = build_a_matrix(inst);
    ComplexMatrix chi(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        chi(i, i) = cdouble(grid.normalization(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cdouble z = grid.grid_chi(inst.event.times[j] - inst.event.times[i]);
            chi(i, j) = z;
            chi(j, i) = std::conj(z);
        }
    }
    return hadamard_product(a, chi);
}

double gn_on_grid(const ThermalInstance& inst, const FrequencyGrid& grid) {
    const double scale = std::pow(inst.sources.e_const, 2.0 * static_cast<double>(inst.order()));
    return scale * permanent_ryser(build_c_matrix_on_grid(inst, grid)).real();
}

} // namespace mbci
