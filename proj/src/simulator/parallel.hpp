// Copyright 2026 The QFw Authors

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

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qfw::sim::detail {

/// Below this many work items per block the range runs on the calling thread.
inline constexpr std::size_t kMinBlock = 1 << 12;

/// Splits [0, count) into contiguous blocks, one per worker, and runs
/// fn(begin, end) on each. Returns after every block has finished.
template <class Fn> void for_blocks(std::size_t count, std::size_t workers, Fn &&fn) {
    const std::size_t w = std::clamp<std::size_t>(count / kMinBlock, 1, std::max<std::size_t>(workers, 1));
    if (w == 1) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t block = (count + w - 1) / w;
    std::vector<std::jthread> threads;
    threads.reserve(w - 1);
    for (std::size_t i = 1; i < w; ++i) {
        const std::size_t begin = std::min(count, i * block);
        const std::size_t end = std::min(count, begin + block);
        threads.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(std::size_t{0}, std::min(count, block));
}

/// Same as for_blocks but always uses exactly `workers` blocks (callers that
/// keep per-block state, e.g. shot partitions).
template <class Fn> void for_fixed_blocks(std::size_t count, std::size_t workers, Fn &&fn) {
    const std::size_t w = std::max<std::size_t>(workers, 1);
    const std::size_t block = (count + w - 1) / w;
    std::vector<std::jthread> threads;
    threads.reserve(w - 1);
    for (std::size_t i = 1; i < w; ++i) {
        const std::size_t begin = std::min(count, i * block);
        const std::size_t end = std::min(count, begin + block);
        threads.emplace_back([&fn, i, begin, end] { fn(i, begin, end); });
    }
    fn(std::size_t{0}, std::size_t{0}, std::min(count, block));
}

} // namespace qfw::sim::detail
