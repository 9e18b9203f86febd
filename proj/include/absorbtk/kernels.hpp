#pragma once

#include <exception>
#include <mutex>

#include "absorbtk/types.hpp"

namespace absorbtk::kernels {

/// Sets the OpenMP team size used by Execution::Parallel kernels (<= 0: runtime default).
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count). Parallel runs use a static schedule, so
/// every index is computed by exactly the same arithmetic as the serial loop.
/// The first exception thrown by any index is rethrown after the loop.
template <class Body>
void for_each_index(Index count, Execution ex, Body&& body) {
  if (ex == Execution::Serial) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace absorbtk::kernels
