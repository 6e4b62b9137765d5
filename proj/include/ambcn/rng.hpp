// SPDX-License-Identifier: Apache-2.0
//
// ambcn: finite-blocklength BLER toolkit for AmBC-NOMA V2X links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

// Counter-based random streams. Every (seed, stream id, counter) triple
// yields the same draw sequence no matter which thread asks for it, so a
// Monte Carlo run is bit-reproducible for any worker count.

namespace ambcn {

namespace rng_detail {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace rng_detail

/// One logical draw stream, keyed by (seed, stream id, counter). Used with
/// stream id = link id and counter = trial index.
class TrialStream {
  public:
    TrialStream(std::uint64_t seed, std::uint32_t stream_id, std::uint64_t counter) {
        std::uint64_t k = seed + 0x9E3779B97F4A7C15ULL * (std::uint64_t(stream_id) + 1);
        k = rng_detail::mix64(k);
        k = rng_detail::mix64(k ^ (counter + 0xD1B54A32D192ED03ULL));
        state_ = k;
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return rng_detail::mix64(state_);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe to feed to log().
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// A pair of independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 2.0 * 3.14159265358979323846 * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    /// Circularly-symmetric complex Gaussian with the given variance
    /// (E|z|^2 = variance). variance == 0 returns exactly 0 without
    /// consuming draws.
    std::complex<double> complex_normal(double variance) {
        if (variance <= 0.0) return {0.0, 0.0};
        const auto [re, im] = normal_pair();
        const double s = std::sqrt(0.5 * variance);
        return {re * s, im * s};
    }

  private:
    std::uint64_t state_;
};

}  // namespace ambcn
