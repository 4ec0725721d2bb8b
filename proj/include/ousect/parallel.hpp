// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace ousect {

// Runs fn(begin, end) over a fixed partition of [0, n).  Each output index
// is owned by exactly one chunk, so results are bit-identical to a serial
// run as long as fn only writes to its own index range.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    std::size_t hw = std::thread::hardware_concurrency();
    std::size_t threads = std::clamp<std::size_t>(hw, 1, 16);
    threads = std::min(threads, (n + 63) / 64);
    if (threads <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace ousect
