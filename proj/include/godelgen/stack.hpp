#pragma once

#include <cstddef>
#include <functional>

namespace godelgen {

inline constexpr std::size_t kLargeStack = std::size_t{512} << 20;

// Runs `fn` to completion on a thread with a large stack and rethrows its
// exception, if any. Encoding and decoding recurse once per term node.
void run_with_stack(const std::function<void()>& fn, std::size_t bytes = kLargeStack);

// Runs fn(0) .. fn(n - 1) on n large-stack threads and joins them all. The
// first exception by worker number is rethrown. n <= 1 runs inline.
void run_workers(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t bytes = kLargeStack);

}  // namespace godelgen
