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

#ifndef MBCI_THERMAL_HPP
#define MBCI_THERMAL_HPP

#include <cstddef>
#include <vector>

#include "mbci/complex_matrix.hpp"

namespace mbci {

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kNarrowbandRatio = 0.1;

/// Independent thermal emitters, one per input port, sharing a Gaussian
/// spectral line shape. Times are dimensionless; rates are mean photons per
/// unit time. All detection rates scale as e_const^(2N) and default to
/// e_const = 1.
struct SourceBank {
    std::vector<double> rates;
    double omega0 = 10.0;      ///< central frequency, inverse-time units
    double delta_omega = 1.0;  ///< bandwidth, inverse-time units
    double e_const = 1.0;      ///< field normalization constant

    std::size_t modes() const { return rates.size(); }
    double total_rate() const;
    /// False once delta_omega/omega0 exceeds the narrow-band warning ratio.
    bool narrowband() const { return delta_omega <= kNarrowbandRatio * omega0; }
    void validate() const;
};

/// A joint detection: N distinct output ports (1-based) with one detection
/// time per port.
struct DetectionEvent {
    std::vector<int> ports;
    std::vector<double> times;

    std::size_t order() const { return ports.size(); }
    void validate(std::size_t modes) const;
};

/// Full experimental configuration: interferometer, sources, detections.
struct ThermalInstance {
    ComplexMatrix unitary; ///< row = output port, column = source
    SourceBank sources;
    DetectionEvent event;

    std::size_t modes() const { return sources.modes(); }
    std::size_t order() const { return event.order(); }
    /// Transition amplitude from source s (0-based) to output port (1-based).
    cdouble amplitude(int port, std::size_t source) const {
        return unitary(static_cast<std::size_t>(port - 1), source);
    }
    void validate() const;
};

/// Normalized Gaussian spectral density of the shared line shape.
double gaussian_spectral_density(double omega, double omega0, double delta_omega);

/// Fourier transform of the spectral density:
/// chi(u) = exp(-i*omega0*u) * exp(-u^2*delta_omega^2/2). |chi| <= 1 and
/// chi(0) = 1 exactly.
cdouble chi_value(double u, double omega0, double delta_omega);
cdouble chi_function(double u, const SourceBank& sources);

/// N x N matrix of pairwise temporal coherences, entry (d, d') =
/// chi(t_{d'} - t_d). Hermitian with unit diagonal.
ComplexMatrix build_chi_matrix(const DetectionEvent& event, const SourceBank& sources);

/// N x N rate-weighted interferometer overlap, entry (d, d') =
/// sum_s conj(u(d,s)) r_s u(d',s) over the sampled output ports. Hermitian
/// positive semi-definite; diagonal entries sum_s |u(d,s)|^2 r_s.
ComplexMatrix build_a_matrix(const ThermalInstance& inst);

/// Hadamard product of the A and chi matrices; positive semi-definite since
/// both factors are.
ComplexMatrix build_c_matrix(const ThermalInstance& inst);

/// The N x M submatrix of the unitary restricted to the sampled output rows.
ComplexMatrix sampled_submatrix(const ThermalInstance& inst);

} // namespace mbci

#endif
