#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace qarea {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs body(i, acc) for i = 0..n-1, split into fixed blocks of 8192
// replications. Each block accumulates into its own slot in index order and
// the slots are merged in block order afterwards, so the aggregate is
// bit-identical for every thread count and schedule. Acc must be
// default-constructible and provide merge(const Acc&).
template <class Acc, class Body>
Acc parallel_accumulate(std::uint64_t n, unsigned n_threads, Body&& body) {
    constexpr std::uint64_t kBlock = 8192;
    const std::uint64_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<Acc> slots(static_cast<std::size_t>(n_blocks));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        try {
            for (;;) {
                const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
                if (b >= n_blocks || failed.load(std::memory_order_relaxed)) return;
                Acc local;
                const std::uint64_t lo = b * kBlock;
                const std::uint64_t hi = std::min(n, lo + kBlock);
                for (std::uint64_t i = lo; i < hi; ++i) body(i, local);
                slots[static_cast<std::size_t>(b)] = std::move(local);
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(n_threads),
                                                      std::max<std::uint64_t>(n_blocks, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Acc out;
    for (auto& s : slots) out.merge(s);
    return out;
}

}  // namespace qarea
