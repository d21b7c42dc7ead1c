// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace sigscope {

// Index-sliced parallel loop. Callers write results into index-addressed
// slots, so output is identical for any thread count. Worker count is capped
// by the SIGSCOPE_THREADS environment variable.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

std::size_t thread_cap();

}  // namespace sigscope
