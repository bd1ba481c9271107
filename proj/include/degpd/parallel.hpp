#pragma once

#include <cstdint>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace degpd::par {

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// jobs <= 0 means "use all hardware threads".
inline int effective_jobs(int jobs) {
  return jobs > 0 ? jobs : hardware_jobs();
}

// Serial reference: the parallel path below must produce identical results.
template <class F>
void for_index_serial(std::int64_t n, F&& fn) {
  for (std::int64_t i = 0; i < n; ++i) fn(i);
}

// Runs fn(i) for i in [0, n). Tasks must write only to index-addressed
// storage; with that discipline the output is identical for any job count.
// The first (lowest-index) task exception is rethrown after the loop.
template <class F>
void for_index(std::int64_t n, int jobs, F&& fn) {
  jobs = effective_jobs(jobs);
#ifdef _OPENMP
  if (jobs > 1 && n > 1) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
    return;
  }
#endif
  (void)jobs;
  for_index_serial(n, std::forward<F>(fn));
}

}  // namespace degpd::par
