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

#include "mbci/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mbci {

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const cdouble& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries()[k] = std::conj(entries_[k]);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("hadamard product requires equal dimensions");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < out.size(); ++k) out.entries()[k] = a.entries()[k] * b.entries()[k];
    return out;
}

double max_abs_entry(const ComplexMatrix& m) {
    double mx = 0.0;
    for (const auto& z : m.entries()) mx = std::max(mx, std::abs(z));
    return mx;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff requires equal dimensions");
    double mx = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) mx = std::max(mx, std::abs(a.entries()[k] - b.entries()[k]));
    return mx;
}

} // namespace mbci
