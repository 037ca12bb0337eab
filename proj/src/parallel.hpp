#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace agree::detail {

// Runs body(i) for i in [begin, end), split into contiguous chunks across
// `workers` threads. The first exception (by chunk order) is rethrown.
template <class Body>
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned workers, Body&& body) {
  if (end <= begin) return;
  const std::uint64_t count = end - begin;
  const std::uint64_t lanes = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count));
  if (lanes == 1) {
    for (std::uint64_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(lanes);
  std::vector<std::thread> threads;
  threads.reserve(lanes);
  for (std::uint64_t lane = 0; lane < lanes; ++lane) {
    const std::uint64_t lo = begin + count * lane / lanes;
    const std::uint64_t hi = begin + count * (lane + 1) / lanes;
    threads.emplace_back([&, lo, hi, lane] {
      try {
        for (std::uint64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[lane] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace agree::detail
