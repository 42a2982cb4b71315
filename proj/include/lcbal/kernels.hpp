#pragma once

#include "lcbal/form.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace lcbal::kernels {

/// Reference wedge product: one pass over term pairs.
Form wedge_serial(const Form& a, const Form& b);

/// OpenMP wedge product. Term pairs are split over threads with private
/// accumulators merged in thread order; exact arithmetic makes the result
/// identical to wedge_serial for any schedule.
Form wedge_parallel(const Form& a, const Form& b);

/// Pair-count threshold above which wedge() dispatches to the parallel kernel.
inline constexpr std::size_t parallel_threshold = 256;

int max_threads();

/// Runs body(i) for i in [0, count). Each index must write only its own slot.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);
void serial_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace lcbal::kernels
