#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cuspdet::spectrum {

// deterministic parallel map over [0, n): out[i] = fn(i)
template <class T, class Fn>
std::vector<T> parallel_map(size_t n, int parallelism, Fn fn)
{
    std::vector<T> out(n);
    if (parallelism <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex m;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(m);
                if (!err) err = std::current_exception();
            }
        }
    };
    size_t nt = std::min<size_t>(static_cast<size_t>(parallelism), n);
    std::vector<std::thread> th;
    for (size_t t = 0; t < nt; ++t) th.emplace_back(worker);
    for (auto& t : th) t.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace cuspdet::spectrum
