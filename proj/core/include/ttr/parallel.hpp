#pragma once

#include <cstddef>
#include <functional>

namespace ttr {

// Global worker count used by the slice- and tube-level loops.  Work is
// split into fixed index ranges, so results are bitwise identical for any
// thread count.  Defaults to 1.
void set_num_threads(std::size_t n);
std::size_t num_threads();

// Runs fn(i) for i in [begin, end).  Each index is handled exactly once by
// exactly one worker; fn must only write to state owned by index i.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

}  // namespace ttr
