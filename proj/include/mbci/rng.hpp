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

#ifndef MBCI_RNG_HPP
#define MBCI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

namespace mbci::rng {

// All randomness in this library flows through mt19937_64 plus the helpers
// below. The standard-library distributions are implementation defined, so
// they are avoided: mapping raw engine words ourselves keeps every stream
// reproducible for a fixed seed.

/// Uniform double in (0, 1], from the top 53 bits of one engine word.
inline double unit_double(std::mt19937_64& eng) {
    return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * unit_double(eng);
}

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(std::mt19937_64& eng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng() % span);
}

/// Two independent standard normals (Box-Muller).
inline std::pair<double, double> gaussian_pair(std::mt19937_64& eng) {
    const double u1 = unit_double(eng);
    const double u2 = unit_double(eng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic per-stream seed derivation from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

} // namespace mbci::rng

#endif
