#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace casimir {

// Fixed-size worker pool. parallel_for(n, fn) calls fn(i) for every i in [0, n)
// and returns once all calls have finished. Callers write results into slot i
// and reduce afterwards in index order, which keeps every reduction independent
// of the worker count.
class Executor {
 public:
  explicit Executor(unsigned workers = 1);
  ~Executor();
  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  unsigned workers() const noexcept { return workers_; }

  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

 private:
  void worker_loop();
  void drain();

  unsigned workers_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t job_size_ = 0;
  std::size_t next_ = 0;
  std::size_t finished_ = 0;
  std::size_t generation_ = 0;
  bool stopping_ = false;
  std::exception_ptr failure_;
};

// Runs fn over [0, n) on `executor` when given, serially otherwise.
inline void for_each_index(Executor* executor, std::size_t n,
                           const std::function<void(std::size_t)>& fn) {
  if (executor == nullptr || executor->workers() <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  executor->parallel_for(n, fn);
}

}  // namespace casimir
