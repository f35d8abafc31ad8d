#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace laxlab {

/// Evaluates fn(0) .. fn(count - 1) on up to `jobs` threads and returns the
/// results in index order, so output never depends on scheduling. The first
/// exception (lowest index) is rethrown after all workers finish.
template <typename Fn>
auto parallel_map(std::size_t count, int jobs, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::min<std::size_t>(count, std::size_t(std::max(jobs, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace laxlab
