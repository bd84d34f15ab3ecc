#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace qaperture {

/// Number of worker threads OpenMP regions will use (1 without OpenMP).
int worker_threads();
void set_worker_threads(int n);
bool openmp_enabled();

/// Runs body(i) for i in [0, n) on the OpenMP team. Each index is written by
/// exactly one thread, so results do not depend on the schedule. If iterations
/// throw, the exception from the lowest index is rethrown after the loop.
template <class Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
  std::exception_ptr failure;
  std::ptrdiff_t failed_at = n;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <class Body>
void serial_for(std::ptrdiff_t n, Body&& body) {
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace qaperture
