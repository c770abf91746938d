#include "nusys/detail/large_stack.hpp"

#include <pthread.h>

#include <cstring>
#include <stdexcept>
#include <string>

namespace nusys::detail {

namespace {

struct Job {
    const std::function<void()>* fn;
    std::exception_ptr error;
};

void* trampoline(void* arg) {
    auto* job = static_cast<Job*>(arg);
    try {
        (*job->fn)();
    } catch (...) {
        job->error = std::current_exception();
    }
    return nullptr;
}

}  // namespace

void run_with_stack(const std::function<void()>& fn, std::size_t stack_bytes) {
    pthread_attr_t attr;
    if (pthread_attr_init(&attr) != 0)
        throw std::runtime_error("pthread_attr_init failed");
    Job job{&fn, nullptr};
    pthread_t thread;
    int rc = pthread_attr_setstacksize(&attr, stack_bytes);
    if (rc == 0)
        rc = pthread_create(&thread, &attr, &trampoline, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0)
        throw std::runtime_error(std::string("cannot start evaluation thread: ") + std::strerror(rc));
    pthread_join(thread, nullptr);
    if (job.error)
        std::rethrow_exception(job.error);
}

}  // namespace nusys::detail
