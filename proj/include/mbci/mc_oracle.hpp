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

#ifndef MBCI_MC_ORACLE_HPP
#define MBCI_MC_ORACLE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "mbci/thermal.hpp"

namespace mbci {

// Statistically independent validation of the permanent formulas: the
// thermal state has a genuine (positive) phase-space density, so sampling
// classical field amplitudes per frequency bin and averaging intensity
// products reproduces the detection rates exactly, up to discretization of
// the spectrum plus statistical noise. Estimates are therefore compared
// against the same formulas evaluated on the discrete grid (gn_on_grid),
// which isolates the statistical error; the discretization error itself is
// bounded by a separate deterministic check on grid_chi.

inline constexpr std::size_t kDefaultGridBins = 64;
inline constexpr double kDefaultGridSpanSigmas = 5.0;
inline constexpr std::uint64_t kMcBlockSize = 16384;
inline constexpr std::uint64_t kMinMcSamples = 10'000;

/// Uniform discretization of the spectral line over omega0 +/- span*bandwidth.
class FrequencyGrid {
public:
    FrequencyGrid(const SourceBank& sources, std::size_t n_bins = kDefaultGridBins,
                  double span_sigmas = kDefaultGridSpanSigmas);

    std::size_t n_bins() const { return centers_.size(); }
    double span_sigmas() const { return span_sigmas_; }
    double bin_width() const { return bin_width_; }
    double center(std::size_t j) const { return centers_[j]; }
    /// Discretized spectral weight f(omega_j) * bin_width.
    double weight(std::size_t j) const { return weights_[j]; }
    /// Sum of all spectral weights; must land in [0.995, 1].
    double normalization() const { return normalization_; }

    /// Discrete-grid counterpart of the coherence function:
    /// sum_j weight(j) * exp(-i omega_j u). Within 1e-3 of the continuum
    /// value for |u| * delta_omega <= 3 at the default grid.
    cdouble grid_chi(double u) const;

private:
    double span_sigmas_;
    double bin_width_;
    std::vector<double> centers_;
    std::vector<double> weights_;
    double normalization_;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// One phase-space sample: amplitude of source s in frequency bin j at
/// [s * n_bins + j], drawn as a circular complex Gaussian with mean square
/// modulus r_s * weight(j).
void sample_amplitudes(const SourceBank& sources, const FrequencyGrid& grid, std::mt19937_64& eng,
                       std::vector<cdouble>& amplitudes);

/// Classical field at an output port (1-based) and time t for one amplitude
/// sample: i * e_const * sum_s u(port, s) * sum_j alpha_{s,j} e^{-i omega_j t}.
cdouble field_at_detector(const std::vector<cdouble>& amplitudes, const ThermalInstance& inst,
                          const FrequencyGrid& grid, int port, double t);

/// Mean of prod_d |field(port_d, t_d)|^2 over n_samples phase-space draws,
/// with its standard error. Samples are drawn in fixed-size blocks, each
/// block seeded deterministically from the master seed and combined in block
/// order, so a fixed (seed, n_samples, grid) reproduces the estimate
/// bit-for-bit. Requires n_samples >= 10^4; the estimator variance grows
/// steeply with N (N <= 3 is the practical range).
McEstimate estimate_gn(const ThermalInstance& inst, const FrequencyGrid& grid, std::uint64_t n_samples,
                       std::uint64_t seed);

/// C matrix with the continuum coherence replaced by grid_chi; its permanent
/// (times e^(2N)) is the exact expectation of the Monte-Carlo estimator.
ComplexMatrix build_c_matrix_on_grid(const ThermalInstance& inst, const FrequencyGrid& grid);

/// Discrete-grid analytic detection rate: e^(2N) * Re per(C_grid).
double gn_on_grid(const ThermalInstance& inst, const FrequencyGrid& grid);

} // namespace mbci

#endif
