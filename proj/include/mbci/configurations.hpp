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

#ifndef MBCI_CONFIGURATIONS_HPP
#define MBCI_CONFIGURATIONS_HPP

#include <cstdint>
#include <vector>

#include "mbci/errors.hpp"

namespace mbci {

inline constexpr std::uint64_t kMaxConfigurations = 10'000'000;

/// One way the N detected photons can be attributed to the M sources:
/// source s contributes multiplicities[s-1] photons. The label multiset is
/// the nondecreasing list of contributing sources (1-based, repeats
/// included) and the combinatorial weight is 1 / prod_s(N_s!), with the
/// factorial product taken exactly in integer arithmetic.
struct SourceConfiguration {
    std::vector<int> multiplicities; ///< size M, each >= 0
    std::vector<int> labels;         ///< size N, nondecreasing, 1-based
    double weight = 1.0;

    static SourceConfiguration from_labels(std::vector<int> labels, std::size_t modes);
};

/// binomial(M+N-1, N); throws SizeLimitError (carrying the count) when the
/// enumeration would exceed kMaxConfigurations.
std::uint64_t count_configurations(std::size_t modes, std::size_t order);

/// Iterates every size-N multiset over {1..M} exactly once, in lexicographic
/// order of the nondecreasing label list. The range form keeps enumeration
/// streaming; enumerate_configurations() materializes it.
class MultisetRange {
public:
    MultisetRange(std::size_t modes, std::size_t order);

    class Iterator {
    public:
        const std::vector<int>& operator*() const { return labels_; }
        Iterator& operator++();
        bool operator!=(const Iterator& other) const { return done_ != other.done_; }

    private:
        friend class MultisetRange;
        Iterator(std::size_t modes, std::size_t order, bool done);
        std::size_t modes_;
        std::vector<int> labels_;
        bool done_;
    };

    Iterator begin() const { return Iterator(modes_, order_, false); }
    Iterator end() const { return Iterator(modes_, order_, true); }

    std::size_t modes() const { return modes_; }
    std::size_t order() const { return order_; }

private:
    std::size_t modes_;
    std::size_t order_;
};

std::vector<SourceConfiguration> enumerate_configurations(std::size_t modes, std::size_t order);

std::uint64_t factorial_u64(unsigned n);

} // namespace mbci

#endif
