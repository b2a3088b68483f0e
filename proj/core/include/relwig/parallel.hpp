#pragma once

#include <functional>

namespace relwig {

/// Worker count: WIGNER_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(begin, end) over a static partition of [0, n) into contiguous
/// chunks. Chunks touch disjoint data by contract, so results do not depend on
/// the number of workers.
void parallel_for(int n, const std::function<void(int begin, int end)>& body);

}  // namespace relwig
