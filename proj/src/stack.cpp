#include "effsim/stack.hpp"

#include <pthread.h>

#include <cstring>
#include <stdexcept>
#include <string>

namespace effsim {

namespace {

struct Job {
  const std::function<void()>* body;
  std::exception_ptr error;
};

void* trampoline(void* arg) {
  auto* job = static_cast<Job*>(arg);
  try {
    (*job->body)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_on_big_stack(const std::function<void()>& body, std::size_t bytes) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  if (int rc = pthread_attr_setstacksize(&attr, bytes); rc != 0) {
    pthread_attr_destroy(&attr);
    throw std::runtime_error(std::string("pthread_attr_setstacksize: ") + std::strerror(rc));
  }
  Job job{&body, nullptr};
  pthread_t th;
  int rc = pthread_create(&th, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error(std::string("pthread_create: ") + std::strerror(rc));
  pthread_join(th, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace effsim
