#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <type_traits>

namespace nusys::detail {

inline constexpr std::size_t kLargeStackBytes = std::size_t{512} << 20;

// Runs fn on a fresh thread with a big stack and waits for it. Exceptions
// propagate to the caller.
void run_with_stack(const std::function<void()>& fn, std::size_t stack_bytes = kLargeStackBytes);

template <class F>
auto run_on_large_stack(F&& fn) -> std::invoke_result_t<F&> {
    using R = std::invoke_result_t<F&>;
    if constexpr (std::is_void_v<R>) {
        run_with_stack([&] { fn(); });
    } else {
        std::optional<R> result;
        run_with_stack([&] { result.emplace(fn()); });
        return std::move(*result);
    }
}

}  // namespace nusys::detail
