#pragma once

#include <cstddef>
#include <functional>

namespace causalcell {

/// Worker count from CAUSALCELL_THREADS; 1 when unset or unparsable.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Indices are split into contiguous blocks,
/// so callers that write to slot i get ordered output. The first exception
/// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace causalcell
