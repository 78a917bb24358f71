#pragma once

#include <cstddef>
#include <functional>

namespace monge {

/// Worker count used when a caller passes 0.
unsigned default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 means
/// default_threads()). The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace monge
