#ifndef BNSL_PARALLEL_HPP
#define BNSL_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>

namespace bnsl {

// Resolves a thread-count setting: values <= 0 mean "auto".
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers using a static block
// partition. fn must only write state owned by index i; the result is then
// independent of the thread count and schedule.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace bnsl

#endif  // BNSL_PARALLEL_HPP
