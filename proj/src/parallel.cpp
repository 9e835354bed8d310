#include "revspec/parallel.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace revspec::par {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void parallel_for(int n, const std::function<void(int)>& fn, int threads) {
#ifdef _OPENMP
  const int nt = threads == 0 ? max_threads() : threads;
  if (nt > 1 && n > 1) {
    std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#else
  (void)threads;
#endif
  for (int i = 0; i < n; ++i) fn(i);
}

}  // namespace revspec::par
