#pragma once

#include <cstddef>
#include <functional>

namespace gmf {

int hardware_workers();

// Runs body(i) for i in [0, n). workers == 0 picks the hardware count,
// workers == 1 runs inline. body(i) must touch only state owned by slot i;
// callers then merge slots in index order, so results are independent of
// the worker count.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace gmf
