#pragma once

// Minimal deterministic parallel-for. Work is split into fixed-size blocks
// claimed by an atomic counter; per-index results land in caller-owned slots
// and any reduction happens afterwards in index order, so the output is
// bit-identical for every worker count. EQ_THREADS caps the worker pool.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace eqdist {

inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EQ_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return hw;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& body, std::size_t block = 64) {
    if (n == 0) return;
    unsigned workers = std::min<std::size_t>(worker_count(), (n + block - 1) / block);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> aborted{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            if (aborted.load(std::memory_order_relaxed)) return;
            std::size_t lo = next.fetch_add(block);
            if (lo >= n) return;
            std::size_t hi = std::min(n, lo + block);
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mutex);
                if (!first_error) first_error = std::current_exception();
                aborted.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace eqdist
