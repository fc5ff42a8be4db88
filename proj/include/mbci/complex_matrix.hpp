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

#ifndef MBCI_COMPLEX_MATRIX_HPP
#define MBCI_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "mbci/errors.hpp"

namespace mbci {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major storage. Values are immutable in spirit:
/// every operation in this library builds a fresh matrix instead of mutating
/// shared state, so instances are safe to share across threads.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cdouble(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw DimensionError("entry count does not match rows*cols");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = cdouble(1.0, 0.0);
        return m;
    }

    static ComplexMatrix filled(std::size_t rows, std::size_t cols, cdouble value) {
        ComplexMatrix m(rows, cols);
        for (auto& e : m.entries_) e = value;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }
    bool is_square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<cdouble>& entries() const { return entries_; }
    std::vector<cdouble>& entries() { return entries_; }
    const cdouble* data() const { return entries_.data(); }
    cdouble* data() { return entries_.data(); }

    bool all_finite() const;

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix adjoint() const;

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> entries_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise product; both operands must have equal dimensions.
ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_entry(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace mbci

#endif
