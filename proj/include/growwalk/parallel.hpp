#pragma once

#include <cstddef>
#include <functional>

namespace growwalk {

/// Worker cap for parallel loops; 0 means hardware concurrency.
void set_max_jobs(std::size_t jobs);
std::size_t max_jobs();

/// Calls body(i) for i in [0, count) on up to max_jobs() threads. Iterations
/// must write disjoint outputs. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace growwalk
