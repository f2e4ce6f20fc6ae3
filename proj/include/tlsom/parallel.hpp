#pragma once

#include <cstddef>
#include <functional>

namespace tlsom {

/// Worker count: TLSOM_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Exceptions from
/// the body are rethrown (the first one wins) after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tlsom
