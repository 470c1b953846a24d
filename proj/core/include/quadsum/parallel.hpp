#pragma once

#include <atomic>
#include <complex>
#include <thread>
#include <vector>

namespace quadsum {

// Deterministic parallel reduction: the index range is cut into fixed blocks
// of 1024, each block is summed sequentially, and block sums are combined in
// block order.  The result is bit-identical for every thread count, so
// strict-sequential mode and parallel runs agree exactly.
template <typename F>
std::complex<double> parallel_block_sum(std::size_t n, int threads, F&& per_index) {
    constexpr std::size_t kBlock = 1024;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> block_sums(nblocks, 0.0);

    auto run_block = [&](std::size_t b) {
        std::complex<double> acc = 0.0;
        std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
        for (std::size_t i = lo; i < hi; ++i) acc += per_index(i);
        block_sums[b] = acc;
    };

    if (threads <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int nt = std::min<std::size_t>(threads, nblocks);
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t b = next.fetch_add(1);
                    if (b >= nblocks) break;
                    run_block(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    std::complex<double> total = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) total += block_sums[b];
    return total;
}

}  // namespace quadsum
