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

#include "mbci/unitary.hpp"

using mbci::cdouble;
using mbci::ComplexMatrix;
using mbci::UnitaryConstruction;
using mbci::UnitarySpec;

namespace {

UnitarySpec haar_spec(std::size_t dim, std::uint64_t seed) {
    UnitarySpec spec;
    spec.dimension = dim;
    spec.seed = seed;
    spec.construction = UnitaryConstruction::HaarRandom;
    return spec;
}

} // namespace

TEST_CASE("identity preset") {
    UnitarySpec spec;
    spec.dimension = 3;
    spec.construction = UnitaryConstruction::Identity;
    CHECK(mbci::random_unitary(spec) == ComplexMatrix::identity(3));
}

TEST_CASE("balanced beamsplitter preset") {
    UnitarySpec spec;
    spec.dimension = 2;
    spec.construction = UnitaryConstruction::BalancedBeamsplitter;
    const auto u = mbci::random_unitary(spec);
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(u(0, 0) == cdouble(h, 0.0));
    CHECK(u(0, 1) == cdouble(h, 0.0));
    CHECK(u(1, 0) == cdouble(h, 0.0));
    CHECK(u(1, 1) == cdouble(-h, 0.0));
    CHECK(mbci::unitarity_residual(u) < 1e-15);

    spec.dimension = 3;
    CHECK_THROWS_AS(mbci::random_unitary(spec), mbci::ValidationError);
}

TEST_CASE("discrete fourier preset is unitary") {
    UnitarySpec spec;
    spec.dimension = 5;
    spec.construction = UnitaryConstruction::DiscreteFourier;
    CHECK(mbci::unitarity_residual(mbci::random_unitary(spec)) < 1e-13);
}

TEST_CASE("haar sampling is unitary within 1e-12 up to M = 32") {
    for (std::size_t dim : {2, 6, 17, 32}) {
        const auto u = mbci::random_unitary(haar_spec(dim, 42));
        CHECK(mbci::unitarity_residual(u) < 1e-12);
    }
}

TEST_CASE("haar sampling is deterministic in the seed") {
    const auto a = mbci::random_unitary(haar_spec(6, 42));
    const auto b = mbci::random_unitary(haar_spec(6, 42));
    CHECK(a == b);
    const auto c = mbci::random_unitary(haar_spec(6, 43));
    CHECK(mbci::max_abs_diff(a, c) > 1e-3);
}

TEST_CASE("explicit entries must be unitary") {
    UnitarySpec spec;
    spec.dimension = 2;
    spec.construction = UnitaryConstruction::ExplicitEntries;
    spec.entries = ComplexMatrix::filled(2, 2, cdouble(0.5, 0.0));
    CHECK_THROWS_AS(mbci::random_unitary(spec), mbci::ValidationError);

    spec.entries = ComplexMatrix::identity(2);
    CHECK(mbci::random_unitary(spec) == ComplexMatrix::identity(2));
}

TEST_CASE("positive semi-definite predicate") {
    CHECK(mbci::is_positive_semidefinite(ComplexMatrix::identity(4), 1e-10));

    ComplexMatrix not_hermitian(2, 2);
    not_hermitian(0, 1) = cdouble(1.0, 0.0);
    CHECK_FALSE(mbci::is_positive_semidefinite(not_hermitian, 1e-10));

    ComplexMatrix indefinite = ComplexMatrix::identity(2);
    indefinite(1, 1) = cdouble(-1.0, 0.0);
    CHECK_FALSE(mbci::is_positive_semidefinite(indefinite, 1e-10));

    ComplexMatrix gram(2, 2);
    gram(0, 0) = 1.0;
    gram(0, 1) = cdouble(0.25, 0.5);
    gram(1, 0) = cdouble(0.25, -0.5);
    gram(1, 1) = 1.0;
    CHECK(mbci::is_positive_semidefinite(gram, 1e-10));

    CHECK_THROWS_AS(mbci::is_positive_semidefinite(ComplexMatrix(2, 3), 1e-10), mbci::DimensionError);
}

TEST_CASE("hadamard product") {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 3.0;
    m(1, 1) = 4.0;
    const auto ones = ComplexMatrix::filled(2, 2, cdouble(1.0, 0.0));
    CHECK(mbci::hadamard_product(m, ones) == m);
    CHECK(mbci::max_abs_entry(mbci::hadamard_product(m, ComplexMatrix(2, 2))) == 0.0);

    ComplexMatrix other(2, 2);
    other(0, 0) = 5.0;
    other(0, 1) = 6.0;
    other(1, 0) = 7.0;
    other(1, 1) = 8.0;
    const auto prod = mbci::hadamard_product(m, other);
    CHECK(prod(0, 0) == cdouble(5.0, 0.0));
    CHECK(prod(0, 1) == cdouble(12.0, 0.0));
    CHECK(prod(1, 0) == cdouble(21.0, 0.0));
    CHECK(prod(1, 1) == cdouble(32.0, 0.0));

    CHECK_THROWS_AS(mbci::hadamard_product(m, ComplexMatrix(2, 3)), mbci::DimensionError);
}
