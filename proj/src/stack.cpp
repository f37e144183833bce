// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/stack.hpp"

#include <pthread.h>

#include <cstring>
#include <stdexcept>
#include <string>

namespace impslice {

namespace {

void* trampoline(void* arg) {
    (*static_cast<const std::function<void()>*>(arg))();
    return nullptr;
}

} // namespace

void run_on_large_stack(const std::function<void()>& task, std::size_t stack_bytes) {
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    if (int rc = pthread_attr_setstacksize(&attr, stack_bytes); rc != 0) {
        pthread_attr_destroy(&attr);
        throw std::runtime_error(std::string("cannot set thread stack size: ") + std::strerror(rc));
    }
    pthread_t thread;
    const int rc = pthread_create(&thread, &attr, trampoline, const_cast<std::function<void()>*>(&task));
    pthread_attr_destroy(&attr);
    if (rc != 0) {
        // No thread, no deep recursion budget: fall back to the caller's stack.
        task();
        return;
    }
    pthread_join(thread, nullptr);
}

} // namespace impslice
