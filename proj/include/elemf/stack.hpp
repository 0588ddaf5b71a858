#pragma once

// Term and derivation algorithms are structurally recursive; numerals in the
// tens of thousands produce trees that deep. Callers that may hit such sizes
// run their work on a thread with a large stack.

#include <pthread.h>

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace elemf {

inline constexpr std::size_t kDefaultStackBytes = std::size_t{2} << 30;

template <class F>
auto with_big_stack(F&& fn, std::size_t stack_bytes = kDefaultStackBytes) -> std::invoke_result_t<F&> {
    using R = std::invoke_result_t<F&>;
    struct Job {
        F* fn;
        std::exception_ptr error;
        std::conditional_t<std::is_void_v<R>, bool, std::optional<R>> result{};
    } job{&fn, nullptr, {}};

    auto trampoline = [](void* p) -> void* {
        auto* j = static_cast<Job*>(p);
        try {
            if constexpr (std::is_void_v<R>) {
                (*j->fn)();
            } else {
                j->result.emplace((*j->fn)());
            }
        } catch (...) {
            j->error = std::current_exception();
        }
        return nullptr;
    };

    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, stack_bytes);
    pthread_t thread;
    const int rc = pthread_create(&thread, &attr, trampoline, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0) throw std::runtime_error("with_big_stack: pthread_create failed");
    pthread_join(thread, nullptr);
    if (job.error) std::rethrow_exception(job.error);
    if constexpr (!std::is_void_v<R>) return std::move(*job.result);
}

}  // namespace elemf
