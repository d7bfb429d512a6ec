#pragma once

#include <cstddef>
#include <functional>

namespace psr {

/// Calls body(i) for every i in [0, count), spread over worker threads.
///
/// Each index must write only to its own output slot; results are then
/// independent of scheduling. max_threads = 0 uses the hardware concurrency.
/// The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned max_threads = 0);

}  // namespace psr
