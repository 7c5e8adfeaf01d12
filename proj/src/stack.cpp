#include "godelgen/stack.hpp"

#include <pthread.h>

#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

namespace godelgen {

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

void run_with_stack(const std::function<void()>& fn, std::size_t bytes) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  Job job{&fn, nullptr};
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    // Fall back to the calling thread.
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

void run_workers(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t bytes) {
  if (n <= 1) {
    fn(0);
    return;
  }
  std::vector<std::function<void()>> bodies;
  bodies.reserve(n);
  for (std::size_t i = 0; i < n; ++i) bodies.emplace_back([&fn, i] { fn(i); });
  std::vector<Job> jobs(n);
  std::vector<pthread_t> threads(n);
  std::vector<bool> started(n, false);
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  for (std::size_t i = 0; i < n; ++i) {
    jobs[i] = Job{&bodies[i], nullptr};
    started[i] = pthread_create(&threads[i], &attr, trampoline, &jobs[i]) == 0;
  }
  pthread_attr_destroy(&attr);
  for (std::size_t i = 0; i < n; ++i) {
    if (started[i]) {
      pthread_join(threads[i], nullptr);
    } else {
      trampoline(&jobs[i]);
    }
  }
  for (const Job& job : jobs) {
    if (job.error) std::rethrow_exception(job.error);
  }
}

}  // namespace godelgen
