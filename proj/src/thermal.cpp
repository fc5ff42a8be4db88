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

#include "mbci/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "mbci/unitary.hpp"

namespace mbci {

double SourceBank::total_rate() const {
    return std::accumulate(rates.begin(), rates.end(), 0.0);
}

void SourceBank::validate() const {
    if (rates.empty()) throw ValidationError("sources: at least one input port required");
    for (std::size_t s = 0; s < rates.size(); ++s) {
        if (!std::isfinite(rates[s]) || rates[s] < 0.0)
            throw ValidationError("sources: rate " + std::to_string(s + 1) + " must be finite and >= 0");
    }
    if (total_rate() <= 0.0) throw ValidationError("sources: at least one rate must be > 0");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw ValidationError("sources: omega0 must be > 0");
    if (!(delta_omega > 0.0) || !std::isfinite(delta_omega))
        throw ValidationError("sources: delta_omega must be > 0");
    if (!(e_const > 0.0) || !std::isfinite(e_const)) throw ValidationError("sources: e_const must be > 0");
}

void DetectionEvent::validate(std::size_t modes) const {
    if (ports.empty()) throw ValidationError("event: at least one detection port required");
    if (ports.size() > modes) throw ValidationError("event: more detections than output ports");
    if (times.size() != ports.size()) throw ValidationError("event: one detection time per port required");
    std::set<int> seen;
    for (int p : ports) {
        if (p < 1 || static_cast<std::size_t>(p) > modes)
            throw ValidationError("event: port " + std::to_string(p) + " outside [1, " + std::to_string(modes) + "]");
        if (!seen.insert(p).second) throw ValidationError("event: duplicate port " + std::to_string(p));
    }
    for (double t : times)
        if (!std::isfinite(t)) throw ValidationError("event: detection times must be finite");
}

void ThermalInstance::validate() const {
    sources.validate();
    if (!unitary.is_square() || unitary.rows() != sources.modes())
        throw DimensionError("instance: unitary must be M x M with M = number of sources");
    if (!unitary.all_finite()) throw ValidationError("instance: unitary entries must be finite");
    if (unitarity_residual(unitary) > kUnitarityTol)
        throw ValidationError("instance: matrix is not unitary within 1e-10");
    event.validate(sources.modes());
}

double gaussian_spectral_density(double omega, double omega0, double delta_omega) {
    const double x = (omega - omega0) / delta_omega;
    return std::exp(-0.5 * x * x) / (std::sqrt(2.0 * std::numbers::pi) * delta_omega);
}

cdouble chi_value(double u, double omega0, double delta_omega) {
    if (u == 0.0) return cdouble(1.0, 0.0);
    const double envelope = std::exp(-0.5 * u * u * delta_omega * delta_omega);
    return std::polar(envelope, -omega0 * u);
}

cdouble chi_function(double u, const SourceBank& sources) {
    return chi_value(u, sources.omega0, sources.delta_omega);
}

ComplexMatrix build_chi_matrix(const DetectionEvent& event, const SourceBank& sources) {
    const std::size_t n = event.order();
    ComplexMatrix chi(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        chi(i, i) = cdouble(1.0, 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cdouble z = chi_function(event.times[j] - event.times[i], sources);
            chi(i, j) = z;
            chi(j, i) = std::conj(z);
        }
    }
    return chi;
}

ComplexMatrix build_a_matrix(const ThermalInstance& inst) {
    const std::size_t n = inst.order();
    const std::size_t m = inst.modes();
    ComplexMatrix a(n, n);
    // Upper triangle is computed, lower mirrored, diagonal done in real
    // arithmetic: the result is exactly Hermitian with a real diagonal.
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t s = 0; s < m; ++s)
            diag += std::norm(inst.amplitude(inst.event.ports[i], s)) * inst.sources.rates[s];
        a(i, i) = cdouble(diag, 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            cdouble acc(0.0, 0.0);
            for (std::size_t s = 0; s < m; ++s)
                acc += std::conj(inst.amplitude(inst.event.ports[i], s)) * inst.sources.rates[s] *
                       inst.amplitude(inst.event.ports[j], s);
            a(i, j) = acc;
            a(j, i) = std::conj(acc);
        }
    }
    return a;
}

ComplexMatrix build_c_matrix(const ThermalInstance& inst) {
    return hadamard_product(build_a_matrix(inst), build_chi_matrix(inst.event, inst.sources));
}

ComplexMatrix sampled_submatrix(const ThermalInstance& inst) {
    const std::size_t n = inst.order();
    const std::size_t m = inst.modes();
    ComplexMatrix sub(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < m; ++s) sub(i, s) = inst.amplitude(inst.event.ports[i], s);
    return sub;
}

} // namespace mbci
