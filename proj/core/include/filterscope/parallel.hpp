#pragma once

#include <cstddef>
#include <functional>

namespace filterscope {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers write into
/// per-index slots, so results do not depend on scheduling. If any call
/// throws, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace filterscope
