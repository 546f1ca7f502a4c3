#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace levysim {

/// Worker count: LEVYSIM_THREADS if set and positive, else all cores.
std::size_t worker_count();

/// Runs body(chunk) for chunk = 0..chunks-1 on up to worker_count() threads.
/// Chunks are independent; callers store results by chunk index and reduce
/// them in index order, so results do not depend on the worker count.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

/// Splits [0, total) into fixed-size chunks and returns per-chunk results
/// in chunk order.
template <typename Acc, typename Fn>
std::vector<Acc> map_chunks(std::size_t total, std::size_t chunk_size, Fn&& fn) {
    const std::size_t chunks = chunk_size == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
    std::vector<Acc> out(chunks);
    parallel_chunks(chunks, [&](std::size_t c) {
        const std::size_t begin = c * chunk_size;
        const std::size_t end = begin + chunk_size < total ? begin + chunk_size : total;
        out[c] = fn(begin, end);
    });
    return out;
}

}  // namespace levysim
