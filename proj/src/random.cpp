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
#include "wfmemory/random.hpp"

#include <utility>

namespace wfm {

namespace {
void push_word(std::vector<std::uint32_t> &words, std::uint64_t value) {
    words.push_back(static_cast<std::uint32_t>(value & 0xffffffffULL));
    words.push_back(static_cast<std::uint32_t>(value >> 32U));
}
} // namespace

RandomStream::RandomStream(std::uint64_t seed) : RandomStream(seed, {}) {}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t substream)
    : RandomStream(seed, std::vector<std::uint64_t>{substream}) {}

RandomStream::RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path)
    : seed_(seed), path_(std::move(path)) {
    reseed();
}

void RandomStream::reseed() {
    // std::seed_seq's mixing algorithm is fixed by the standard, so the
    // resulting engine state is portable.
    std::vector<std::uint32_t> words;
    words.reserve(2 * (path_.size() + 2));
    push_word(words, seed_);
    push_word(words, path_.size());
    for (auto p : path_) {
        push_word(words, p);
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

RandomStream RandomStream::child(std::uint64_t index) const {
    auto path = path_;
    path.push_back(index);
    return RandomStream(seed_, std::move(path));
}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
}

bool RandomStream::bernoulli(double p) {
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return uniform() < p;
}

} // namespace wfm
