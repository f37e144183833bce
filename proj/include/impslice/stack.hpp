// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>

namespace impslice {

// Evaluation, slicing, serialisation and destruction of a trace all recurse
// once per loop iteration, so a trace near the fuel limit needs far more
// stack than a default thread has. Front ends run engine work through here.

inline constexpr std::size_t engine_stack_bytes = std::size_t{1} << 30;

/// Runs `task` to completion on a fresh thread with `stack_bytes` of stack.
/// `task` must not throw; `with_large_stack` handles exceptions.
void run_on_large_stack(const std::function<void()>& task, std::size_t stack_bytes = engine_stack_bytes);

/// Returns `f()`, rethrowing whatever it throws.
template <class F> auto with_large_stack(F&& f) -> std::invoke_result_t<F&> {
    using R = std::invoke_result_t<F&>;
    std::exception_ptr failure;
    if constexpr (std::is_void_v<R>) {
        run_on_large_stack([&] {
            try {
                f();
            } catch (...) {
                failure = std::current_exception();
            }
        });
        if (failure) {
            std::rethrow_exception(failure);
        }
    } else {
        std::optional<R> result;
        run_on_large_stack([&] {
            try {
                result.emplace(f());
            } catch (...) {
                failure = std::current_exception();
            }
        });
        if (failure) {
            std::rethrow_exception(failure);
        }
        return std::move(*result);
    }
}

} // namespace impslice
