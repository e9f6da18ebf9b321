// Copyright 2026 The qcrank-dpqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCRANK_RNG_HPP
#define QCRANK_RNG_HPP

// Random streams, version "splitmix64-v1".
//
// Every stream is keyed by a 64-bit value; draw k of a stream is
// mix64(key + (k + 1) * 0x9e3779b97f4a7c15) with the SplitMix64 finaliser.
// Keys for sub-streams come from derive_key(seed, tags...), which folds
// each tag in as key = mix64(key ^ (tag + 0x9e3779b97f4a7c15)). Doubles use
// the top 53 bits. Nothing here depends on <random> distributions, so the
// streams are identical across standard libraries.

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace qcrank {

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t key = mix64(seed);
    for (auto t : tags)
        key = mix64(key ^ (t + golden_gamma));
    return key;
}

class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t key) : state_(key) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        state_ += golden_gamma;
        return mix64(state_);
    }

    /// Uniform in [0, 1).
    constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

} // namespace qcrank

#endif // QCRANK_RNG_HPP
