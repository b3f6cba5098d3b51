// Copyright 2026 The wfmemory Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file random.hpp
 * Reproducible random streams addressed by (seed, substream path).
 */
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wfm {

/**
 * @brief A deterministic random stream.
 *
 * The engine state is a pure function of the seed and the substream path, so
 * a worker that owns substream `k` draws the same numbers regardless of which
 * thread runs it or in which order. Children are derived with `child(i)`.
 *
 * Uniform draws are produced from the top 53 bits of a `std::mt19937_64`
 * output rather than `std::uniform_real_distribution`, whose algorithm is
 * implementation defined.
 */
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);
    RandomStream(std::uint64_t seed, std::uint64_t substream);

    /// Independent stream keyed by this stream's path extended with `index`.
    [[nodiscard]] RandomStream child(std::uint64_t index) const;

    /// Uniform double in [0, 1).
    double uniform();
    /// True with probability `p` (p outside [0,1] is clamped).
    bool bernoulli(double p);
    /// Fair coin.
    bool coin() { return bernoulli(0.5); }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] const std::vector<std::uint64_t> &path() const {
        return path_;
    }

  private:
    RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path);
    void reseed();

    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::mt19937_64 engine_;
};

} // namespace wfm
