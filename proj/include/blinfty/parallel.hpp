#pragma once

#include <functional>

namespace blinfty {

/// Thread budget: BLINFTY_THREADS when set, otherwise the OpenMP default.
int thread_budget();

/// Data-parallel loop over [0, n). Each iteration must be independent; the
/// caller merges results in index order for deterministic output. With
/// `parallel` false (or no OpenMP) this is a plain serial loop, kept as the
/// reference path for tests and the benchmark.
void parallel_for(int n, const std::function<void(int)>& body, bool parallel = true);

} // namespace blinfty
