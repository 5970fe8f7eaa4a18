#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lzsm {

// Shared-counter worker pool over an index range. Work items must be
// independent; results should be written to preallocated slots so the output
// does not depend on the number of workers.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> threads;
    int nw = jobs < static_cast<int>(n) ? jobs : static_cast<int>(n);
    threads.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

// OpenBLAS thread clamp while task-level parallelism is active (nested
// threading oversubscribes a small machine).
void blas_threads(int n);

} // namespace lzsm
