#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>

namespace ifsaddr {

/// Every data-parallel kernel ships a serial reference path selected by this.
enum class Execution { Serial, Parallel };

/// Caps OpenMP workers; 0 restores the runtime default.
void set_thread_count(int threads);
int thread_count();

namespace detail {

// Keeps the exception of the lowest failing index so that errors are
// reproducible regardless of scheduling.
class FirstError {
 public:
  void record(std::size_t index, std::exception_ptr e) {
    std::lock_guard lock(mutex_);
    if (index < index_) {
      index_ = index;
      error_ = std::move(e);
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::size_t index_ = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error_;
};

}  // namespace detail

/// Calls body(i) for i in [0, n). Bodies must only write to index-owned slots.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  detail::FirstError first;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      first.record(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  first.rethrow();
}

}  // namespace ifsaddr
