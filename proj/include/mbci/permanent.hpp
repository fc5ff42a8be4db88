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

#ifndef MBCI_PERMANENT_HPP
#define MBCI_PERMANENT_HPP

#include <cstddef>

#include "mbci/complex_matrix.hpp"

namespace mbci {

inline constexpr std::size_t kNaivePermanentMaxDim = 10;
inline constexpr std::size_t kRyserPermanentMaxDim = 30;

/// Permanent by direct summation over all n! permutations. Serves as the
/// reference oracle for the fast kernel; guarded at n <= 10.
/// The permanent of the 0x0 matrix is 1 (empty product convention).
cdouble permanent_naive(const ComplexMatrix& m);

/// Permanent by Ryser's inclusion-exclusion formula with Gray-code subset
/// enumeration: O(2^n * n) arithmetic, one column-sum update per subset step.
/// The subset order is fixed, so results are bit-reproducible for a fixed
/// input. Accumulation is done in extended precision to survive the heavy
/// cancellation of the inclusion-exclusion sum. Guarded at n <= 30.
cdouble permanent_ryser(const ComplexMatrix& m);

} // namespace mbci

#endif
