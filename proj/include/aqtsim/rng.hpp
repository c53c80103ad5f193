// Copyright 2026 The aqt-sim Authors
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

#ifndef AQTSIM_RNG_HPP
#define AQTSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace aqtsim {

/// Counter-style pseudo-random stream built on SplitMix64.
///
/// The point of rolling our own instead of using <random> is bit-for-bit
/// reproducibility: the standard distributions are implementation-defined,
/// and Monte-Carlo results here must be identical for a given (seed, stream)
/// regardless of how work is split across threads. A stream is derived from
/// (seed, stream_index) by mixing, so trajectory k can be replayed in
/// isolation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x6a09e667f3bcc909ull)) {}

    Rng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(mix(seed ^ 0x6a09e667f3bcc909ull) ^
                     mix(stream + 0x9e3779b97f4a7c15ull))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform double in the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller. One value per call; the second
    /// Box-Muller value is discarded to keep the stream position a pure
    /// function of the call count.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace aqtsim

#endif
