#pragma once

#include <pthread.h>

#include <cstddef>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

namespace mwis {

namespace detail {
inline thread_local bool on_deep_stack = false;
}

inline constexpr std::size_t kDeepStackBytes = std::size_t{1} << 29;  // 512 MiB, committed lazily

/// A joinable thread with a large stack for deeply recursive solver runs.
class DeepStackThread {
 public:
  explicit DeepStackThread(std::function<void()> body, std::size_t stack_bytes = kDeepStackBytes)
      : state_(std::make_unique<State>()) {
    state_->body = std::move(body);
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, stack_bytes);
    int rc = pthread_create(&handle_, &attr, &DeepStackThread::trampoline, state_.get());
    pthread_attr_destroy(&attr);
    if (rc != 0) throw std::runtime_error("could not start solver thread");
    joinable_ = true;
  }
  DeepStackThread(const DeepStackThread&) = delete;
  DeepStackThread& operator=(const DeepStackThread&) = delete;
  ~DeepStackThread() {
    if (joinable_) pthread_join(handle_, nullptr);
  }

  /// Waits for the body and rethrows anything it threw.
  void join() {
    if (!joinable_) return;
    pthread_join(handle_, nullptr);
    joinable_ = false;
    if (state_->error) std::rethrow_exception(state_->error);
  }

 private:
  struct State {
    std::function<void()> body;
    std::exception_ptr error;
  };

  static void* trampoline(void* arg) {
    auto* s = static_cast<State*>(arg);
    detail::on_deep_stack = true;
    try {
      s->body();
    } catch (...) {
      s->error = std::current_exception();
    }
    return nullptr;
  }

  std::unique_ptr<State> state_;
  pthread_t handle_{};
  bool joinable_ = false;
};

/// Runs fn() on a deep stack (inline when already on one) and returns its result.
template <typename Fn>
auto run_on_deep_stack(Fn&& fn) -> decltype(fn()) {
  if (detail::on_deep_stack) return fn();
  using R = decltype(fn());
  std::optional<R> out;
  DeepStackThread t([&] { out.emplace(fn()); });
  t.join();
  return std::move(*out);
}

}  // namespace mwis
