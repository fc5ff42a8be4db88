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

#include <cmath>
#include <random>

#include "mbci/correlators.hpp"
#include "mbci/mc_oracle.hpp"
#include "mbci/rng.hpp"
#include "mbci/unitary.hpp"
#include "mbci/validation.hpp"

using mbci::cdouble;
using mbci::FrequencyGrid;
using mbci::SourceBank;
using mbci::ThermalInstance;

namespace {

ThermalInstance beamsplitter_hbt(double rate_a, double tau) {
    mbci::UnitarySpec spec;
    spec.dimension = 2;
    spec.construction = mbci::UnitaryConstruction::BalancedBeamsplitter;
    ThermalInstance inst;
    inst.unitary = mbci::random_unitary(spec);
    inst.sources.rates = {rate_a, 0.0};
    inst.event.ports = {1, 2};
    inst.event.times = {0.0, tau};
    inst.validate();
    return inst;
}

} // namespace

TEST_CASE("frequency grid normalization and guards") {
    SourceBank sources;
    sources.rates = {1.0};
    const FrequencyGrid grid(sources);
    CHECK(grid.n_bins() == 64);
    CHECK(grid.normalization() >= 0.995);
    CHECK(grid.normalization() <= 1.0);

    CHECK_THROWS_AS(FrequencyGrid(sources, 4), mbci::ValidationError);
    CHECK_THROWS_AS(FrequencyGrid(sources, 64, 2.0), mbci::ValidationError);
}

TEST_CASE("grid coherence tracks the continuum within 1e-3 for |u| <= 3") {
    SourceBank sources;
    sources.rates = {1.0};
    const FrequencyGrid grid(sources);
    for (int k = -30; k <= 30; ++k) {
        const double u = static_cast<double>(k) / 10.0;
        const auto discrete = grid.grid_chi(u);
        const auto continuum = mbci::chi_function(u, sources);
        CHECK(std::abs(discrete - continuum) < 1e-3);
    }
}

TEST_CASE("amplitude sampling moments") {
    SourceBank sources;
    sources.rates = {0.0, 1.4};
    const FrequencyGrid grid(sources);
    std::mt19937_64 eng(1234);

    const std::size_t draws = 100000;
    const std::size_t probe_bin = 32;
    double sum_sq = 0.0;
    cdouble sum(0.0, 0.0);
    std::vector<cdouble> amplitudes;
    for (std::size_t k = 0; k < draws; ++k) {
        mbci::sample_amplitudes(sources, grid, eng, amplitudes);
        CHECK(amplitudes[probe_bin] == cdouble(0.0, 0.0)); // zero-rate source
        const cdouble alpha = amplitudes[grid.n_bins() + probe_bin];
        sum_sq += std::norm(alpha);
        sum += alpha;
    }
    const double expected = 1.4 * grid.weight(probe_bin);
    const double mean_sq = sum_sq / static_cast<double>(draws);
    // |alpha|^2 is exponential: std error = mean / sqrt(n).
    const double band = 3.0 * expected / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(mean_sq - expected) < band);

    const double mean_component_band = 3.0 * std::sqrt(expected / 2.0 / static_cast<double>(draws));
    CHECK(std::abs(sum.real() / static_cast<double>(draws)) < mean_component_band);
    CHECK(std::abs(sum.imag() / static_cast<double>(draws)) < mean_component_band);
}

TEST_CASE("field at detector basics") {
    SourceBank sources;
    sources.rates = {2.0};
    sources.e_const = 1.0;
    const FrequencyGrid grid(sources, 8);
    ThermalInstance inst;
    inst.unitary = mbci::ComplexMatrix::identity(1);
    inst.sources = sources;
    inst.event.ports = {1};
    inst.event.times = {0.0};
    inst.validate();

    std::vector<cdouble> amplitudes(grid.n_bins(), cdouble(0.0, 0.0));
    CHECK(mbci::field_at_detector(amplitudes, inst, grid, 1, 0.3) == cdouble(0.0, 0.0));

    // One populated bin through the identity interferometer:
    // i * e * alpha * exp(-i omega_j t).
    amplitudes[3] = cdouble(0.8, -0.2);
    const double t = 0.7;
    const auto field = mbci::field_at_detector(amplitudes, inst, grid, 1, t);
    const cdouble expected = cdouble(0.0, 1.0) * amplitudes[3] * std::polar(1.0, -grid.center(3) * t);
    CHECK(std::abs(field - expected) < 1e-15);
    CHECK(std::abs(field) == doctest::Approx(std::abs(amplitudes[3])).epsilon(1e-12));
}

TEST_CASE("ensemble field correlator reproduces g1 on the grid") {
    mbci::UnitarySpec spec;
    spec.dimension = 2;
    spec.construction = mbci::UnitaryConstruction::BalancedBeamsplitter;
    ThermalInstance inst;
    inst.unitary = mbci::random_unitary(spec);
    inst.sources.rates = {1.2, 0.4};
    inst.event.ports = {1, 2};
    inst.event.times = {0.1, 0.45};
    inst.validate();
    const FrequencyGrid grid(inst.sources);

    // Expected covariance on the grid: A(0,1) * grid_chi(t1 - t0).
    const auto a = mbci::build_a_matrix(inst);
    const cdouble expected = a(0, 1) * grid.grid_chi(inst.event.times[1] - inst.event.times[0]);

    const std::size_t draws = 1000000;
    std::mt19937_64 eng(555);
    std::vector<cdouble> amplitudes;
    cdouble sum(0.0, 0.0);
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
        mbci::sample_amplitudes(inst.sources, grid, eng, amplitudes);
        const auto f0 = mbci::field_at_detector(amplitudes, inst, grid, 1, inst.event.times[0]);
        const auto f1 = mbci::field_at_detector(amplitudes, inst, grid, 2, inst.event.times[1]);
        const cdouble prod = std::conj(f0) * f1;
        sum += prod;
        sum_sq += std::norm(prod);
    }
    const auto count = static_cast<double>(draws);
    const cdouble mean = sum / count;
    const double se = std::sqrt((sum_sq / count - std::norm(mean)) / count); // per-component bound
    CHECK(std::abs(mean.real() - expected.real()) < 3.0 * se);
    CHECK(std::abs(mean.imag() - expected.imag()) < 3.0 * se);
}

TEST_CASE("estimator is deterministic in the seed") {
    const auto inst = beamsplitter_hbt(1.0, 0.2);
    const FrequencyGrid grid(inst.sources);
    const auto a = mbci::estimate_gn(inst, grid, 20000, 99);
    const auto b = mbci::estimate_gn(inst, grid, 20000, 99);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const auto c = mbci::estimate_gn(inst, grid, 20000, 100);
    CHECK(a.mean != c.mean);

    CHECK_THROWS_AS(mbci::estimate_gn(inst, grid, 100, 1), mbci::ValidationError);
}

TEST_CASE("first-order estimate agrees with the grid analytic value") {
    ThermalInstance inst = beamsplitter_hbt(0.9, 0.0);
    inst.event.ports = {1};
    inst.event.times = {0.0};
    const FrequencyGrid grid(inst.sources);
    const double analytic = mbci::gn_on_grid(inst, grid);
    // Grid value is the continuum rate scaled by the captured spectral weight.
    CHECK(analytic == doctest::Approx(0.45 * grid.normalization()).epsilon(1e-12));

    const auto est = mbci::estimate_gn(inst, grid, 200000, 31);
    CHECK(std::abs(est.mean - analytic) < 3.0 * est.std_error);
}

TEST_CASE("HBT estimate agrees at zero delay") {
    const auto inst = beamsplitter_hbt(1.0, 0.0);
    const FrequencyGrid grid(inst.sources);
    const double analytic = mbci::gn_on_grid(inst, grid);
    const auto est = mbci::estimate_gn(inst, grid, 400000, 47);
    CHECK(std::abs(est.mean - analytic) < 3.0 * est.std_error);

    // And the grid value itself sits on the continuum one up to the
    // truncated spectral tails.
    CHECK(mbci::relative_error(analytic, mbci::gn_permanent_c(inst).value) < 1e-4);
}

TEST_CASE("uniform rates estimate matches r^N") {
    mbci::UnitarySpec spec;
    spec.dimension = 3;
    spec.seed = 11;
    ThermalInstance inst;
    inst.unitary = mbci::random_unitary(spec);
    inst.sources.rates = {0.7, 0.7, 0.7};
    inst.event.ports = {1, 3};
    inst.event.times = {0.2, -0.1};
    inst.validate();
    const FrequencyGrid grid(inst.sources);
    const auto est = mbci::estimate_gn(inst, grid, 400000, 63);
    CHECK(std::abs(est.mean - 0.49) < 3.0 * est.std_error + 1e-4);
}
