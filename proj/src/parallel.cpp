#include "blinfty/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blinfty {

int thread_budget() {
    if (const char* env = std::getenv("BLINFTY_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void parallel_for(int n, const std::function<void(int)>& body, bool parallel) {
#ifdef _OPENMP
    if (parallel && thread_budget() > 1) {
        int threads = thread_budget();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    (void)parallel;
    for (int i = 0; i < n; ++i) body(i);
}

} // namespace blinfty
