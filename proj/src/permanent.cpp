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

#include "mbci/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace mbci {

cdouble permanent_naive(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("permanent requires a square matrix");
    const std::size_t n = m.rows();
    if (n > kNaivePermanentMaxDim)
        throw SizeLimitError("permanent_naive limited to n <= " + std::to_string(kNaivePermanentMaxDim) +
                             ", got n = " + std::to_string(n));
    if (n == 0) return cdouble(1.0, 0.0);

    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    cdouble total(0.0, 0.0);
    do {
        cdouble prod(1.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) prod *= m(i, sigma[i]);
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

cdouble permanent_ryser(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("permanent requires a square matrix");
    const std::size_t n = m.rows();
    if (n > kRyserPermanentMaxDim)
        throw SizeLimitError("permanent_ryser limited to n <= " + std::to_string(kRyserPermanentMaxDim) +
                             ", got n = " + std::to_string(n));
    if (n == 0) return cdouble(1.0, 0.0);

    using cldouble = std::complex<long double>;
    std::vector<cldouble> row_sum(n, cldouble(0.0L, 0.0L));
    cldouble total(0.0L, 0.0L);

    // per(m) = (-1)^n sum_{S != {}} (-1)^{|S|} prod_i sum_{j in S} m(i,j).
    // Subsets walk the binary-reflected Gray code; step k toggles column
    // ctz(k), and |S| flips parity at every step.
    const std::uint64_t n_subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < n_subsets; ++k) {
        const unsigned col = static_cast<unsigned>(std::countr_zero(k));
        const std::uint64_t gray = k ^ (k >> 1);
        const bool added = (gray >> col) & 1u;
        if (added) {
            for (std::size_t i = 0; i < n; ++i) row_sum[i] += cldouble(m(i, col));
        } else {
            for (std::size_t i = 0; i < n; ++i) row_sum[i] -= cldouble(m(i, col));
        }
        cldouble prod(1.0L, 0.0L);
        for (std::size_t i = 0; i < n; ++i) prod *= row_sum[i];
        if (k & 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if (n % 2 != 0) total = -total;
    return cdouble(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

} // namespace mbci
