#pragma once

#include <functional>

namespace revspec::par {

/// Number of hardware threads OpenMP will use (1 when built without OpenMP).
int max_threads();

/// Runs fn(i) for i in [0, n). threads == 1 runs the plain serial loop
/// (the reference path used by the equivalence tests); threads == 0 uses all
/// available ones. The first exception thrown by any task is rethrown on the
/// calling thread after the loop completes.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

}  // namespace revspec::par
