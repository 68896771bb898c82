#pragma once

#include <cstddef>
#include <functional>

namespace momentflow {

/// Worker cap: MOMENTFLOW_THREADS when set, hardware concurrency otherwise.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) over a static block partition. Callers must
/// write only to disjoint locations so the result is independent of the
/// execution order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace momentflow
