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

#include "mbci/unitary.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "mbci/rng.hpp"

namespace mbci {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    Eigen::MatrixXcd g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const auto [re, im] = rng::gaussian_pair(eng);
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cdouble(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < dim; ++j) {
        const cdouble rjj = r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
        const double mag = std::abs(rjj);
        const cdouble phase = mag > 0.0 ? rjj / mag : cdouble(1.0, 0.0);
        q.col(static_cast<Eigen::Index>(j)) *= phase;
    }
    return from_eigen(q);
}

ComplexMatrix balanced_beamsplitter() {
    const double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m(0, 0) = h;
    m(0, 1) = h;
    m(1, 0) = h;
    m(1, 1) = -h;
    return m;
}

ComplexMatrix discrete_fourier(std::size_t dim) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) * static_cast<double>(j) /
                                 static_cast<double>(dim);
            m(i, j) = std::polar(norm, phase);
        }
    return m;
}

} // namespace

std::string construction_name(UnitaryConstruction c) {
    switch (c) {
        case UnitaryConstruction::HaarRandom: return "haar-random";
        case UnitaryConstruction::ExplicitEntries: return "explicit-entries";
        case UnitaryConstruction::Identity: return "identity";
        case UnitaryConstruction::BalancedBeamsplitter: return "balanced-beamsplitter";
        case UnitaryConstruction::DiscreteFourier: return "discrete-fourier";
    }
    return "unknown";
}

std::optional<UnitaryConstruction> construction_from_name(const std::string& name) {
    if (name == "haar-random") return UnitaryConstruction::HaarRandom;
    if (name == "explicit-entries") return UnitaryConstruction::ExplicitEntries;
    if (name == "identity") return UnitaryConstruction::Identity;
    if (name == "balanced-beamsplitter") return UnitaryConstruction::BalancedBeamsplitter;
    if (name == "discrete-fourier") return UnitaryConstruction::DiscreteFourier;
    return std::nullopt;
}

void UnitarySpec::validate() const {
    if (dimension < 1) throw ValidationError("unitary dimension must be >= 1");
    if (construction == UnitaryConstruction::BalancedBeamsplitter && dimension != 2)
        throw ValidationError("balanced-beamsplitter preset requires dimension 2");
    if (construction == UnitaryConstruction::ExplicitEntries) {
        if (entries.rows() != dimension || entries.cols() != dimension)
            throw ValidationError("explicit unitary entries must be dimension x dimension");
        if (!entries.all_finite()) throw ValidationError("explicit unitary entries must be finite");
        if (unitarity_residual(entries) > 1e-10)
            throw ValidationError("explicit entries are not unitary within 1e-10");
    }
}

ComplexMatrix random_unitary(const UnitarySpec& spec) {
    spec.validate();
    switch (spec.construction) {
        case UnitaryConstruction::Identity: return ComplexMatrix::identity(spec.dimension);
        case UnitaryConstruction::BalancedBeamsplitter: return balanced_beamsplitter();
        case UnitaryConstruction::DiscreteFourier: return discrete_fourier(spec.dimension);
        case UnitaryConstruction::ExplicitEntries: return spec.entries;
        case UnitaryConstruction::HaarRandom: return haar_unitary(spec.dimension, spec.seed);
    }
    throw ValidationError("unknown unitary construction");
}

double unitarity_residual(const ComplexMatrix& u) {
    if (!u.is_square()) throw DimensionError("unitarity check requires a square matrix");
    return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.rows()));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) throw DimensionError("hermitian check requires a square matrix");
    return max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_positive_semidefinite(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) throw DimensionError("PSD check requires a square matrix");
    if (!is_hermitian(m, tol)) return false;
    if (m.rows() == 0) return true;
    // Symmetrize before the eigensolve so roundoff in the input cannot leak
    // a non-Hermitian part into the spectrum.
    Eigen::MatrixXcd h = to_eigen(m);
    h = 0.5 * (h + h.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

} // namespace mbci
