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

#include <algorithm>
#include <numeric>
#include <string>

#include "mbci/configurations.hpp"

using mbci::SourceConfiguration;

TEST_CASE("two sources, two photons") {
    const auto configs = mbci::enumerate_configurations(2, 2);
    REQUIRE(configs.size() == 3);
    CHECK(configs[0].labels == std::vector<int>{1, 1});
    CHECK(configs[1].labels == std::vector<int>{1, 2});
    CHECK(configs[2].labels == std::vector<int>{2, 2});
    CHECK(configs[0].weight == 0.5);
    CHECK(configs[1].weight == 1.0);
    CHECK(configs[2].weight == 0.5);
    CHECK(configs[0].multiplicities == std::vector<int>{2, 0});
    CHECK(configs[1].multiplicities == std::vector<int>{1, 1});
}

TEST_CASE("single photon enumerates the sources") {
    const auto configs = mbci::enumerate_configurations(3, 1);
    REQUIRE(configs.size() == 3);
    for (int s = 1; s <= 3; ++s) {
        CHECK(configs[static_cast<std::size_t>(s - 1)].labels == std::vector<int>{s});
        CHECK(configs[static_cast<std::size_t>(s - 1)].weight == 1.0);
    }
}

TEST_CASE("counts match the stars-and-bars formula") {
    CHECK(mbci::count_configurations(4, 3) == 20);
    CHECK(mbci::enumerate_configurations(4, 3).size() == 20);
    CHECK(mbci::count_configurations(1, 7) == 1);
    CHECK(mbci::count_configurations(7, 0) == 1);
    CHECK(mbci::count_configurations(6, 6) == 462);
}

TEST_CASE("enumeration is lexicographic with consistent weights") {
    const auto configs = mbci::enumerate_configurations(3, 4);
    CHECK(configs.size() == mbci::count_configurations(3, 4));
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const auto& cfg = configs[k];
        CHECK(std::is_sorted(cfg.labels.begin(), cfg.labels.end()));
        CHECK(std::accumulate(cfg.multiplicities.begin(), cfg.multiplicities.end(), 0) == 4);
        if (k > 0) CHECK(configs[k - 1].labels < cfg.labels);

        std::uint64_t denom = 1;
        for (int mult : cfg.multiplicities) denom *= mbci::factorial_u64(static_cast<unsigned>(mult));
        CHECK(cfg.weight == 1.0 / static_cast<double>(denom));
    }
}

TEST_CASE("zero photons yields the empty multiset") {
    const auto configs = mbci::enumerate_configurations(5, 0);
    REQUIRE(configs.size() == 1);
    CHECK(configs[0].labels.empty());
    CHECK(configs[0].weight == 1.0);
}

TEST_CASE("enumeration guard carries the offending count") {
    CHECK_THROWS_AS(mbci::count_configurations(100, 10), mbci::SizeLimitError);
    try {
        mbci::count_configurations(30, 12);
    } catch (const mbci::SizeLimitError& e) {
        CHECK(std::string(e.what()).find("exceeds guard") != std::string::npos);
    }
}

TEST_CASE("from_labels rejects malformed multisets") {
    CHECK_THROWS_AS(SourceConfiguration::from_labels({2, 1}, 3), mbci::ValidationError);
    CHECK_THROWS_AS(SourceConfiguration::from_labels({0}, 3), mbci::ValidationError);
    CHECK_THROWS_AS(SourceConfiguration::from_labels({4}, 3), mbci::ValidationError);
}
