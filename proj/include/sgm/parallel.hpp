#ifndef SGM_PARALLEL_HPP
#define SGM_PARALLEL_HPP

#include <thread>
#include <vector>

namespace sgm {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results must be
// written into pre-sized, index-disjoint slots by the caller, which keeps the
// outcome independent of the schedule.
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
    if (count <= 0) return;
    if (jobs <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    int workers = std::min(jobs, count);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&fn, w, workers, count] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace sgm

#endif
