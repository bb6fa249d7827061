#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eprstat::detail {

inline unsigned resolve_threads(unsigned requested)
{
    if (requested == 0) {
        requested = std::max(1u, std::thread::hardware_concurrency());
    }
    return requested;
}

/// Calls fn(k) for every k in [0, count), splitting the range into
/// contiguous blocks over `threads` workers. fn must only write to slots
/// owned by k. The first exception thrown by any worker is rethrown.
template <class Fn>
void for_each_index(std::size_t count, unsigned threads, Fn&& fn)
{
    threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            fn(k);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        const std::size_t block = (count + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t begin = w * block;
            const std::size_t end = std::min(count, begin + block);
            if (begin >= end) {
                break;
            }
            workers.emplace_back([&, begin, end] {
                try {
                    for (std::size_t k = begin; k < end; ++k) {
                        fn(k);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace eprstat::detail
