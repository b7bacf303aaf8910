#pragma once

#include <cstddef>
#include <functional>

namespace rpqwn {

// Worker cap: RPQWN_THREADS when set (minimum 1), else the hardware count.
unsigned sweep_thread_count();

// Runs fn(0..count-1) across up to sweep_thread_count() threads. Callers
// keep determinism by writing to disjoint, index-addressed slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace rpqwn
