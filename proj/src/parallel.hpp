#pragma once

#include <pfilter/execution.hpp>

#include <omp.h>

#include <cstddef>
#include <exception>
#include <mutex>

namespace pfilter::detail {

/// Runs body(i) for i in [0, n). Under Execution::Parallel the iterations
/// are spread over OpenMP threads; the first exception thrown by any
/// iteration is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t n, Execution execution, Body&& body,
                  int threads = 0) {
  if (execution == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace pfilter::detail
