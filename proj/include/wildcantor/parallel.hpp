#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace wildcantor {

/// Runs fn(begin, end, chunk) over `count` items split into `jobs` contiguous
/// chunks and returns the per-chunk results in chunk order, so reductions are
/// independent of scheduling.
template <class R, class Fn>
std::vector<R> parallel_chunks(std::size_t count, int jobs, Fn fn) {
    const std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), count));
    std::vector<R> results(n);
    if (n == 1) {
        results[0] = fn(std::size_t{0}, count, std::size_t{0});
        return results;
    }
    std::vector<std::thread> threads;
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t b = count * c / n, e = count * (c + 1) / n;
        threads.emplace_back([&results, &fn, b, e, c] { results[c] = fn(b, e, c); });
    }
    for (auto& t : threads) t.join();
    return results;
}

}  // namespace wildcantor
