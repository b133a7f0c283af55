#pragma once

#include <cstddef>
#include <functional>

namespace schurlab {

// Worker count used by every internally parallel loop. Results never depend on it:
// each index writes only its own slot and reductions happen in index order afterwards.
void set_thread_count(unsigned n);
unsigned thread_count();

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace schurlab
