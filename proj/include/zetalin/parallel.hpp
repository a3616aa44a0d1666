#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace zetalin::parallel {

/// Worker cap used by every parallel loop in the library. 0 selects
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once and
/// callers write results into per-index slots, so output never depends on
/// the number of workers. The first exception thrown by any body is
/// rethrown after all workers have stopped.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body);

/// Fixed-shape pairwise summation: the tree depends only on values.size().
double pairwise_sum(std::span<const double> values);

}  // namespace zetalin::parallel
