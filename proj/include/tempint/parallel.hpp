#pragma once

#include <cstddef>
#include <functional>

namespace tempint {

/// Worker count: TEMPINT_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
unsigned worker_count();

/// Calls body(k) for k in [0, n) across worker_count() threads in contiguous
/// chunks. If any call throws, the exception from the lowest failing
/// index is rethrown here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tempint
