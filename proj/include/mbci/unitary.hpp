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

#ifndef MBCI_UNITARY_HPP
#define MBCI_UNITARY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "mbci/complex_matrix.hpp"

namespace mbci {

// Convention used throughout: the interferometer matrix maps input ports
// (columns) to output ports (rows), so u(d, s) is the transition amplitude
// from source s into output port d.

enum class UnitaryConstruction {
    HaarRandom,
    ExplicitEntries,
    Identity,
    BalancedBeamsplitter,
    DiscreteFourier,
};

std::string construction_name(UnitaryConstruction c);
std::optional<UnitaryConstruction> construction_from_name(const std::string& name);

struct UnitarySpec {
    std::size_t dimension = 1;
    std::uint64_t seed = 0;
    UnitaryConstruction construction = UnitaryConstruction::HaarRandom;
    ComplexMatrix entries; // ExplicitEntries only

    void validate() const;
};

/// Builds the unitary described by the spec. Haar sampling fills the matrix
/// with i.i.d. standard complex Gaussians, orthonormalizes the columns by a
/// Householder QR, then rescales column j by the phase of the j-th diagonal
/// of the triangular factor; the phase fix makes the distribution uniform in
/// the group. Deterministic for a fixed seed.
ComplexMatrix random_unitary(const UnitarySpec& spec);

/// max entry of |U U^dagger - I|.
double unitarity_residual(const ComplexMatrix& u);

/// True iff m is Hermitian within tol and its eigenvalues are all >= -tol.
bool is_positive_semidefinite(const ComplexMatrix& m, double tol);

bool is_hermitian(const ComplexMatrix& m, double tol);

} // namespace mbci

#endif
