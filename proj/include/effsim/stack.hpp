#pragma once

// Runs a callable on a thread with a large stack. Handlers recurse once per
// machine step, so deep searches need far more than the default 8 MiB.

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>

namespace effsim {

inline constexpr std::size_t default_stack_bytes = std::size_t{2} << 30;

/// Runs `body` to completion on a fresh thread with `bytes` of stack.
/// Exceptions are rethrown on the calling thread.
void run_on_big_stack(const std::function<void()>& body, std::size_t bytes = default_stack_bytes);

template <class Fn>
auto with_big_stack(Fn&& fn, std::size_t bytes = default_stack_bytes) {
  using R = std::invoke_result_t<Fn&>;
  if constexpr (std::is_void_v<R>) {
    run_on_big_stack([&] { fn(); }, bytes);
  } else {
    std::optional<R> out;
    run_on_big_stack([&] { out.emplace(fn()); }, bytes);
    return std::move(*out);
  }
}

}  // namespace effsim
