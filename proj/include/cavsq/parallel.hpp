#ifndef CAVSQ_PARALLEL_HPP
#define CAVSQ_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace cavsq {

/// Worker cap: CAVSQ_THREADS when set (>=1), hardware concurrency otherwise.
std::size_t max_threads();

/// Indexed map over [0, count). Each index writes only its own slot, so the
/// result is identical for any thread count. Small ranges run inline.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    const std::size_t workers = std::min(max_threads(), count);
    if (workers <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([=]() {
            for (std::size_t i = w; i < count; i += workers)
                fn(i);
        });
    }
    for (std::thread& t : pool)
        t.join();
}

} // namespace cavsq

#endif
