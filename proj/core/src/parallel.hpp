#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace semnoma::detail {

inline constexpr std::size_t kBlockSize = 8192;

inline unsigned worker_count(unsigned cap, std::size_t work) {
    unsigned n = cap != 0 ? cap : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// Computes `compute(i)` for i in [0, n) in blocks across workers, then feeds
// results to `reduce(i, value)` strictly in index order.
template <class T, class Compute, class Reduce>
void indexed_map_reduce(std::size_t n, unsigned max_threads, Compute&& compute, Reduce&& reduce) {
    std::vector<T> block(std::min(n, kBlockSize));
    for (std::size_t start = 0; start < n; start += kBlockSize) {
        const std::size_t len = std::min(kBlockSize, n - start);
        const unsigned workers = worker_count(max_threads, len);

        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&](unsigned w) {
            const std::size_t lo = len * w / workers;
            const std::size_t hi = len * (w + 1) / workers;
            try {
                for (std::size_t k = lo; k < hi; ++k) block[k] = compute(start + k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };

        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(workers - 1);
            for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
            work(0);
        }
        if (failure) std::rethrow_exception(failure);
        for (std::size_t k = 0; k < len; ++k) reduce(start + k, block[k]);
    }
}

}  // namespace semnoma::detail
