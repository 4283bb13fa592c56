#pragma once

#include <cstdint>
#include <functional>

namespace homcov {

// HOMCOV_WORKERS override, else hardware concurrency, clamped to [1, 64].
unsigned worker_count();

// Splits [0, n) into one contiguous chunk per worker and runs
// f(worker, begin, end) on its own thread. Chunk boundaries depend only on n
// and the worker count; callers combine per-chunk results in chunk order to
// stay deterministic.
void parallel_chunks(
    std::uint64_t n,
    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& f);

}  // namespace homcov
