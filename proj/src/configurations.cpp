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

#include "mbci/configurations.hpp"

#include <string>

namespace mbci {

std::uint64_t factorial_u64(unsigned n) {
    if (n > 20) throw SizeLimitError("factorial_u64 overflows past 20!");
    std::uint64_t f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

SourceConfiguration SourceConfiguration::from_labels(std::vector<int> labels, std::size_t modes) {
    SourceConfiguration cfg;
    cfg.multiplicities.assign(modes, 0);
    int prev = 0;
    for (int label : labels) {
        if (label < 1 || static_cast<std::size_t>(label) > modes)
            throw ValidationError("configuration label outside [1, M]");
        if (label < prev) throw ValidationError("configuration labels must be nondecreasing");
        prev = label;
        ++cfg.multiplicities[static_cast<std::size_t>(label - 1)];
    }
    // 128-bit product: individual multiplicities can reach N = 30 where the
    // factorial no longer fits in 64 bits.
    unsigned __int128 denom = 1;
    for (int mult : cfg.multiplicities)
        for (int k = 2; k <= mult; ++k) denom *= static_cast<unsigned>(k);
    cfg.weight = 1.0 / static_cast<double>(static_cast<long double>(denom));
    cfg.labels = std::move(labels);
    return cfg;
}

std::uint64_t count_configurations(std::size_t modes, std::size_t order) {
    if (modes < 1) throw ValidationError("count_configurations requires M >= 1");
    // binomial(M+N-1, N), incrementally: every prefix product is itself a
    // binomial, so the division is exact. Saturates far above the guard.
    constexpr unsigned __int128 saturation = static_cast<unsigned __int128>(1) << 100;
    unsigned __int128 count = 1;
    bool saturated = false;
    for (std::size_t k = 1; k <= order; ++k) {
        const auto factor = static_cast<unsigned __int128>(modes - 1 + k);
        if (count > saturation / factor) {
            saturated = true;
            break;
        }
        count = count * factor / k;
        if (count > saturation) {
            saturated = true;
            break;
        }
    }
    if (saturated || count > kMaxConfigurations) {
        const std::string shown =
            saturated ? "more than 2^100" : std::to_string(static_cast<std::uint64_t>(count));
        throw SizeLimitError("configuration count " + shown + " exceeds guard of " +
                             std::to_string(kMaxConfigurations) + " for M = " + std::to_string(modes) +
                             ", N = " + std::to_string(order));
    }
    return static_cast<std::uint64_t>(count);
}

MultisetRange::MultisetRange(std::size_t modes, std::size_t order) : modes_(modes), order_(order) {
    count_configurations(modes, order); // guard
}

MultisetRange::Iterator::Iterator(std::size_t modes, std::size_t order, bool done)
    : modes_(modes), labels_(order, 1), done_(done) {}

MultisetRange::Iterator& MultisetRange::Iterator::operator++() {
    // Advance the rightmost label that can still grow and reset the suffix
    // to its new value; the walk is lexicographic over nondecreasing lists.
    const int max_label = static_cast<int>(modes_);
    std::size_t i = labels_.size();
    while (i > 0) {
        --i;
        if (labels_[i] < max_label) {
            const int next = labels_[i] + 1;
            for (std::size_t j = i; j < labels_.size(); ++j) labels_[j] = next;
            return *this;
        }
    }
    done_ = true;
    return *this;
}

std::vector<SourceConfiguration> enumerate_configurations(std::size_t modes, std::size_t order) {
    std::vector<SourceConfiguration> out;
    out.reserve(static_cast<std::size_t>(count_configurations(modes, order)));
    for (const auto& labels : MultisetRange(modes, order))
        out.push_back(SourceConfiguration::from_labels(labels, modes));
    return out;
}

} // namespace mbci
