// parallel.hpp
// Deterministic data-parallel reduction over an index range.
//
// The range is cut into fixed-size blocks (block size independent of the
// thread count), each block is accumulated sequentially, and the per-block
// results are combined in block order. Outputs are therefore bit-identical
// for any number of threads, which the reporting layer relies on.
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qdl {

// Compensated (Kahan) accumulator; used for all floating-point reductions.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// Resolve a thread-count request: explicit value wins, then QDL_THREADS,
// then hardware concurrency. Always at least 1.
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QDL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

inline constexpr std::uint64_t kDefaultBlockSize = 4096;

// Map fn over [begin, end) in fixed blocks, reduce per-block doubles in
// block order. fn receives (block_begin, block_end) and must itself be
// deterministic; blocks are claimed dynamically but combined in order.
template <typename BlockFn>
double block_reduce(std::uint64_t begin, std::uint64_t end, unsigned threads,
                    BlockFn&& fn, std::uint64_t block_size = kDefaultBlockSize) {
    if (end <= begin) return 0.0;
    const std::uint64_t n_blocks = (end - begin + block_size - 1) / block_size;
    std::vector<double> partial(n_blocks, 0.0);

    unsigned n_threads = resolve_threads(threads);
    if (n_threads > n_blocks) n_threads = static_cast<unsigned>(n_blocks);

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
                if (b >= n_blocks) break;
                std::uint64_t lo = begin + b * block_size;
                std::uint64_t hi = lo + block_size < end ? lo + block_size : end;
                partial[b] = fn(lo, hi);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    KahanSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

} // namespace qdl
