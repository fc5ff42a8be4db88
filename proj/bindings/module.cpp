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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "mbci/config_io.hpp"
#include "mbci/configurations.hpp"
#include "mbci/correlators.hpp"
#include "mbci/mc_oracle.hpp"
#include "mbci/permanent.hpp"
#include "mbci/thermal.hpp"
#include "mbci/unitary.hpp"
#include "mbci/validation.hpp"

namespace py = pybind11;

namespace {

using complex_array = py::array_t<mbci::cdouble, py::array::c_style | py::array::forcecast>;

mbci::ComplexMatrix to_matrix(const complex_array& arr) {
    if (arr.ndim() != 2) throw mbci::DimensionError("expected a 2-d complex array");
    const auto rows = static_cast<std::size_t>(arr.shape(0));
    const auto cols = static_cast<std::size_t>(arr.shape(1));
    mbci::ComplexMatrix m(rows, cols);
    const auto view = arr.unchecked<2>();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
    return m;
}

py::array_t<mbci::cdouble> to_numpy(const mbci::ComplexMatrix& m) {
    py::array_t<mbci::cdouble> arr({m.rows(), m.cols()});
    auto view = arr.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
    return arr;
}

mbci::UnitarySpec make_spec(std::size_t dim, std::uint64_t seed, const std::optional<std::string>& preset) {
    mbci::UnitarySpec spec;
    spec.dimension = dim;
    spec.seed = seed;
    if (preset) {
        const auto construction = mbci::construction_from_name(*preset);
        if (!construction) throw mbci::ValidationError("unknown preset '" + *preset + "'");
        spec.construction = *construction;
    }
    return spec;
}

mbci::Formulation parse_formulation(const std::string& name) {
    const auto f = mbci::formulation_from_name(name);
    if (!f) throw mbci::ValidationError("unknown formulation '" + name + "'");
    return *f;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-boson correlation rates for multi-mode thermal light in linear interferometers";

    py::register_exception<mbci::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<mbci::SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
    py::register_exception<mbci::ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def(
        "permanent_naive", [](const complex_array& arr) { return mbci::permanent_naive(to_matrix(arr)); },
        py::arg("matrix"), "Permanent by summation over all n! permutations (n <= 10).");
    m.def(
        "permanent_ryser", [](const complex_array& arr) { return mbci::permanent_ryser(to_matrix(arr)); },
        py::arg("matrix"), "Permanent by Ryser's formula with Gray-code updates (n <= 30).");
    m.def(
        "random_unitary",
        [](std::size_t dim, std::uint64_t seed, const std::optional<std::string>& preset) {
            return to_numpy(mbci::random_unitary(make_spec(dim, seed, preset)));
        },
        py::arg("dim"), py::arg("seed") = 0, py::arg("preset") = py::none(),
        "Haar-random unitary for the given seed, or a named preset "
        "(identity | balanced-beamsplitter | discrete-fourier).");
    m.def(
        "unitarity_residual", [](const complex_array& arr) { return mbci::unitarity_residual(to_matrix(arr)); },
        py::arg("matrix"));
    m.def(
        "is_positive_semidefinite",
        [](const complex_array& arr, double tol) { return mbci::is_positive_semidefinite(to_matrix(arr), tol); },
        py::arg("matrix"), py::arg("tol") = 1e-9);

    py::class_<mbci::SourceBank>(m, "SourceBank",
                                 "Thermal emitters: mean photon rates plus the shared Gaussian line shape.")
        .def(py::init([](std::vector<double> rates, double omega0, double delta_omega, double e_const) {
                 mbci::SourceBank sources;
                 sources.rates = std::move(rates);
                 sources.omega0 = omega0;
                 sources.delta_omega = delta_omega;
                 sources.e_const = e_const;
                 sources.validate();
                 return sources;
             }),
             py::arg("rates"), py::arg("omega0") = 10.0, py::arg("delta_omega") = 1.0, py::arg("e_const") = 1.0)
        .def_readonly("rates", &mbci::SourceBank::rates)
        .def_readonly("omega0", &mbci::SourceBank::omega0)
        .def_readonly("delta_omega", &mbci::SourceBank::delta_omega)
        .def_readonly("e_const", &mbci::SourceBank::e_const)
        .def_property_readonly("modes", &mbci::SourceBank::modes)
        .def("narrowband", &mbci::SourceBank::narrowband);

    py::class_<mbci::DetectionEvent>(m, "DetectionEvent",
                                     "Joint detection: distinct 1-based output ports with one time per port.")
        .def(py::init([](std::vector<int> ports, std::vector<double> times) {
                 mbci::DetectionEvent event;
                 event.ports = std::move(ports);
                 event.times = std::move(times);
                 return event;
             }),
             py::arg("ports"), py::arg("times"))
        .def_readonly("ports", &mbci::DetectionEvent::ports)
        .def_readonly("times", &mbci::DetectionEvent::times)
        .def_property_readonly("order", &mbci::DetectionEvent::order);

    py::class_<mbci::ThermalInstance>(m, "ThermalInstance",
                                      "Interferometer (row = output, column = source), sources and detections.")
        .def(py::init([](const complex_array& unitary, mbci::SourceBank sources, mbci::DetectionEvent event) {
                 mbci::ThermalInstance inst;
                 inst.unitary = to_matrix(unitary);
                 inst.sources = std::move(sources);
                 inst.event = std::move(event);
                 inst.validate();
                 return inst;
             }),
             py::arg("unitary"), py::arg("sources"), py::arg("event"))
        .def_property_readonly("unitary", [](const mbci::ThermalInstance& inst) { return to_numpy(inst.unitary); })
        .def_readonly("sources", &mbci::ThermalInstance::sources)
        .def_readonly("event", &mbci::ThermalInstance::event)
        .def_property_readonly("modes", &mbci::ThermalInstance::modes)
        .def_property_readonly("order", &mbci::ThermalInstance::order);

    m.def("chi_function", &mbci::chi_function, py::arg("u"), py::arg("sources"),
          "Temporal coherence between detections separated by u.");
    m.def(
        "build_chi_matrix",
        [](const mbci::DetectionEvent& event, const mbci::SourceBank& sources) {
            return to_numpy(mbci::build_chi_matrix(event, sources));
        },
        py::arg("event"), py::arg("sources"));
    m.def(
        "build_a_matrix", [](const mbci::ThermalInstance& inst) { return to_numpy(mbci::build_a_matrix(inst)); },
        py::arg("instance"));
    m.def(
        "build_c_matrix", [](const mbci::ThermalInstance& inst) { return to_numpy(mbci::build_c_matrix(inst)); },
        py::arg("instance"));
    m.def(
        "sampled_submatrix",
        [](const mbci::ThermalInstance& inst) { return to_numpy(mbci::sampled_submatrix(inst)); },
        py::arg("instance"));

    py::class_<mbci::CorrelationResult>(m, "CorrelationResult")
        .def_readonly("value", &mbci::CorrelationResult::value)
        .def_property_readonly(
            "formulation",
            [](const mbci::CorrelationResult& r) { return mbci::formulation_name(r.formulation); })
        .def_readonly("residual_imag", &mbci::CorrelationResult::residual_imag)
        .def_readonly("n_terms", &mbci::CorrelationResult::n_terms)
        .def("__repr__", [](const mbci::CorrelationResult& r) {
            return "CorrelationResult(value=" + mbci::format_double_17(r.value) + ", formulation='" +
                   mbci::formulation_name(r.formulation) + "', n_terms=" + std::to_string(r.n_terms) + ")";
        });

    m.def("g1", &mbci::g1, py::arg("instance"), py::arg("port_d"), py::arg("port_dprime"),
          "First-order correlator between two sampled ports.");
    m.def("gn_permutation_sum", &mbci::gn_permutation_sum, py::arg("instance"));
    m.def("gn_permanent_c", &mbci::gn_permanent_c, py::arg("instance"));
    m.def("gn_configuration_sum", &mbci::gn_configuration_sum, py::arg("instance"));
    m.def("gn_equal_times", &mbci::gn_equal_times, py::arg("instance"));
    m.def("gn_equal_times_incoherent", &mbci::gn_equal_times_incoherent, py::arg("instance"));
    m.def("gn_uncorrelated_limit", &mbci::gn_uncorrelated_limit, py::arg("instance"));
    m.def(
        "evaluate",
        [](const mbci::ThermalInstance& inst, const std::string& formulation) {
            return mbci::evaluate(inst, parse_formulation(formulation));
        },
        py::arg("instance"), py::arg("formulation"),
        "Dispatch on a formulation name: perm-sum | per-C | config-sum | equal-times | incoherent | uncorrelated.");

    py::class_<mbci::SourceConfiguration>(m, "SourceConfiguration")
        .def_readonly("multiplicities", &mbci::SourceConfiguration::multiplicities)
        .def_readonly("labels", &mbci::SourceConfiguration::labels)
        .def_readonly("weight", &mbci::SourceConfiguration::weight)
        .def("__repr__", [](const mbci::SourceConfiguration& cfg) {
            std::string out = "SourceConfiguration(labels=[";
            for (std::size_t i = 0; i < cfg.labels.size(); ++i)
                out += (i ? "," : "") + std::to_string(cfg.labels[i]);
            return out + "], weight=" + mbci::format_double_17(cfg.weight) + ")";
        });
    m.def("enumerate_configurations", &mbci::enumerate_configurations, py::arg("modes"), py::arg("order"),
          "Every size-N multiset over {1..M} in lexicographic order, with weights.");
    m.def("count_configurations", &mbci::count_configurations, py::arg("modes"), py::arg("order"));
    m.def(
        "build_interference_matrix",
        [](const complex_array& sampled, const mbci::SourceConfiguration& config,
           const std::vector<std::size_t>& sigma) {
            return to_numpy(mbci::build_interference_matrix(to_matrix(sampled), config, sigma));
        },
        py::arg("sampled"), py::arg("config"), py::arg("sigma"));
    m.def(
        "build_repeated_column_matrix",
        [](const complex_array& sampled, const mbci::SourceConfiguration& config) {
            return to_numpy(mbci::build_repeated_column_matrix(to_matrix(sampled), config));
        },
        py::arg("sampled"), py::arg("config"));

    py::class_<mbci::EqualRateIdentityReport>(m, "EqualRateIdentityReport")
        .def_readonly("modes", &mbci::EqualRateIdentityReport::modes)
        .def_readonly("order", &mbci::EqualRateIdentityReport::order)
        .def_readonly("dev_identity_sigma", &mbci::EqualRateIdentityReport::dev_identity_sigma)
        .def_readonly("max_dev_other_sigma", &mbci::EqualRateIdentityReport::max_dev_other_sigma)
        .def_readonly("dev_incoherent_sum", &mbci::EqualRateIdentityReport::dev_incoherent_sum)
        .def_readonly("max_dev", &mbci::EqualRateIdentityReport::max_dev)
        .def_readonly("tol", &mbci::EqualRateIdentityReport::tol)
        .def_readonly("pass_", &mbci::EqualRateIdentityReport::pass)
        .def_readonly("n_configurations", &mbci::EqualRateIdentityReport::n_configurations)
        .def_readonly("n_permutations", &mbci::EqualRateIdentityReport::n_permutations);
    m.def(
        "verify_equal_rate_identities",
        [](const complex_array& unitary, const std::vector<int>& ports, double tol) {
            return mbci::verify_equal_rate_identities(to_matrix(unitary), ports, tol);
        },
        py::arg("unitary"), py::arg("ports"), py::arg("tol") = 1e-10);

    py::class_<mbci::FrequencyGrid>(m, "FrequencyGrid",
                                    "Uniform discretization of the spectral line for the sampling oracle.")
        .def(py::init<const mbci::SourceBank&, std::size_t, double>(), py::arg("sources"),
             py::arg("n_bins") = mbci::kDefaultGridBins, py::arg("span_sigmas") = mbci::kDefaultGridSpanSigmas)
        .def_property_readonly("n_bins", &mbci::FrequencyGrid::n_bins)
        .def_property_readonly("bin_width", &mbci::FrequencyGrid::bin_width)
        .def_property_readonly("normalization", &mbci::FrequencyGrid::normalization)
        .def("center", &mbci::FrequencyGrid::center, py::arg("bin"))
        .def("weight", &mbci::FrequencyGrid::weight, py::arg("bin"))
        .def("grid_chi", &mbci::FrequencyGrid::grid_chi, py::arg("u"));

    py::class_<mbci::McEstimate>(m, "McEstimate")
        .def_readonly("mean", &mbci::McEstimate::mean)
        .def_readonly("std_error", &mbci::McEstimate::std_error)
        .def_readonly("n_samples", &mbci::McEstimate::n_samples)
        .def_readonly("seed", &mbci::McEstimate::seed)
        .def("__repr__", [](const mbci::McEstimate& e) {
            return "McEstimate(mean=" + mbci::format_double_17(e.mean) +
                   ", std_error=" + mbci::format_double_17(e.std_error) + ")";
        });

    m.def(
        "sample_amplitudes",
        [](const mbci::SourceBank& sources, const mbci::FrequencyGrid& grid, std::uint64_t seed) {
            std::mt19937_64 eng(seed);
            std::vector<mbci::cdouble> amplitudes;
            mbci::sample_amplitudes(sources, grid, eng, amplitudes);
            py::array_t<mbci::cdouble> arr({sources.modes(), grid.n_bins()});
            auto view = arr.mutable_unchecked<2>();
            for (std::size_t s = 0; s < sources.modes(); ++s)
                for (std::size_t j = 0; j < grid.n_bins(); ++j)
                    view(static_cast<py::ssize_t>(s), static_cast<py::ssize_t>(j)) = amplitudes[s * grid.n_bins() + j];
            return arr;
        },
        py::arg("sources"), py::arg("grid"), py::arg("seed"),
        "One phase-space draw: modes x n_bins complex amplitudes.");
    m.def(
        "field_at_detector",
        [](const complex_array& amplitudes, const mbci::ThermalInstance& inst, const mbci::FrequencyGrid& grid,
           int port, double t) {
            const auto view = amplitudes.unchecked<2>();
            std::vector<mbci::cdouble> flat(static_cast<std::size_t>(view.shape(0) * view.shape(1)));
            for (py::ssize_t s = 0; s < view.shape(0); ++s)
                for (py::ssize_t j = 0; j < view.shape(1); ++j)
                    flat[static_cast<std::size_t>(s * view.shape(1) + j)] = view(s, j);
            return mbci::field_at_detector(flat, inst, grid, port, t);
        },
        py::arg("amplitudes"), py::arg("instance"), py::arg("grid"), py::arg("port"), py::arg("t"));
    m.def("estimate_gn", &mbci::estimate_gn, py::arg("instance"), py::arg("grid"), py::arg("n_samples"),
          py::arg("seed"), "Monte-Carlo estimate of the N-fold detection rate with its standard error.");
    m.def("gn_on_grid", &mbci::gn_on_grid, py::arg("instance"), py::arg("grid"),
          "Discrete-grid analytic value: the exact expectation of estimate_gn.");

    m.attr("__version__") = "0.1.0";
}
