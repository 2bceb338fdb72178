#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace markov {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Items are
/// assigned by stride, so each index is handled by exactly one worker and
/// results written to per-index slots do not depend on the worker count.
/// The exception from the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(count, 1));
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t start) {
    for (std::size_t i = start; i < count; i += workers) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace markov
