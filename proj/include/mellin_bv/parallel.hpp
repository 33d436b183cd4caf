#pragma once

// Deterministic fork-join helper. Work is split into contiguous index blocks,
// one per worker; callers write results into disjoint, index-addressed slots
// and reduce afterwards in a fixed order, so outputs do not depend on the
// thread count. MELLIN_BV_THREADS sets the pool size (default: hardware
// concurrency, minimum 1).

#include <cstddef>
#include <functional>

namespace mbv {

int thread_count();

// fn(begin, end) over [0, n), blocks assigned in index order
void parallel_for_blocks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mbv
