// Copyright 2026 The osspq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace osspq {

/// Seedable generator used everywhere randomness enters (initial parameters,
/// ball sampling, measurement shots).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Floating-point draws do not go through std::uniform_real_distribution
/// (implementation-defined); `uniform()` takes the top 53 bits of one engine
/// output, so a given seed produces identical doubles on every platform.
///
/// Independent streams are derived with `Rng::derive(seed, stream...)`, a
/// SplitMix64 hash of the parent seed and the stream labels. Stream labels used
/// by the library: (seed, 0) initial parameters; (seed, 1, iteration) candidate
/// generation in step `iteration`; (seed, 2, iteration, k) shot sampling for
/// candidate k; (seed, 3) final histogram.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    template <typename... Labels>
    static std::uint64_t derive(std::uint64_t seed, Labels... labels) {
        std::uint64_t h = splitmix(seed);
        ((h = splitmix(h ^ static_cast<std::uint64_t>(labels))), ...);
        return h;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace osspq
