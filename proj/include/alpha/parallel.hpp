#ifndef ALPHA_PARALLEL_HPP
#define ALPHA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace alpha {

// Worker count: ALPHA_PATCH_THREADS if set, else hardware concurrency.
// Affects speed only; every result slot is written by exactly one index and
// per-index summation order is fixed, so output is worker-count independent.
int worker_count();

// Static block partition of [0, n) over the workers. Exceptions from the
// body are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace alpha

#endif
