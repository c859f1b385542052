#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace spinctl {

// Runs fn(i) for i in [0, n). With threads <= 1 this is a plain loop;
// otherwise indices are strided across workers. Work items must be
// independent; callers make determinism hold by writing to per-index slots
// and reducing in index order afterwards.
inline void run_indexed(int n, int threads, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int nw = std::min(threads, n);
    if (nw <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += nw) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace spinctl
