#ifndef TORICRAY_PARALLEL_HPP
#define TORICRAY_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace toricray {

// Worker count: explicit argument > TORICRAY_THREADS env > 1.
inline int default_threads() {
    if (const char* env = std::getenv("TORICRAY_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Deterministic parallel loop: every index writes only its own output slot,
// so results never depend on scheduling. Summations inside the body run in
// the fixed per-index order.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::size_t nw = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += nw) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace toricray

#endif
