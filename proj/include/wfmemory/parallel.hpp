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
#pragma once

#include <cstddef>
#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace wfm {

/// Serial kernels are the reference implementation; parallel kernels must
/// reproduce them bit for bit.
enum class Execution { serial, parallel };

inline int max_threads() {
#if defined(_OPENMP)
    return ::omp_get_max_threads();
#else
    return 1;
#endif
}

/**
 * @brief Run `f(i)` for i in [0, n).
 *
 * Every index must own its output slot and its random substream; the loop
 * body may not depend on iteration order.
 */
template <class F>
void for_each_index(std::size_t n, Execution exec, F &&f) {
    const auto count = static_cast<std::int64_t>(n);
    if (exec == Execution::serial || n < 2) {
        for (std::int64_t i = 0; i < count; ++i) {
            f(static_cast<std::size_t>(i));
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        f(static_cast<std::size_t>(i));
    }
}

/// Fixed sample-block size for Monte Carlo kernels. Results depend on this
/// value, never on the thread count.
inline constexpr std::size_t kSampleBlock = 4096;

inline std::size_t block_count(std::size_t samples) {
    return (samples + kSampleBlock - 1) / kSampleBlock;
}

} // namespace wfm
