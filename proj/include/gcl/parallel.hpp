#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace gcl {

/// Runs work(i) for i in [0, count) on `workers` threads and hands each
/// result to emit(i, result) on the calling thread in index order, as soon
/// as every earlier index has been emitted. Exceptions thrown by work are
/// rethrown from emit order position.
template <class Work, class Emit>
void parallel_ordered(std::size_t count, unsigned workers, Work&& work, Emit&& emit) {
  using Result = decltype(work(std::size_t{}));
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) emit(i, work(i));
    return;
  }

  struct Slot {
    std::optional<Result> value;
    std::exception_ptr error;
    bool ready = false;
  };
  std::vector<Slot> slots(count);
  std::mutex mutex;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> cancelled{false};

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !cancelled; i = next++) {
        Slot local;
        try {
          local.value.emplace(work(i));
        } catch (...) {
          local.error = std::current_exception();
        }
        {
          std::lock_guard lock(mutex);
          slots[i].value = std::move(local.value);
          slots[i].error = local.error;
          slots[i].ready = true;
        }
        cv.notify_all();
      }
    });
  }

  try {
    for (std::size_t i = 0; i < count; ++i) {
      std::unique_lock lock(mutex);
      cv.wait(lock, [&] { return slots[i].ready; });
      Slot slot = std::move(slots[i]);
      lock.unlock();
      if (slot.error) std::rethrow_exception(slot.error);
      emit(i, std::move(*slot.value));
    }
  } catch (...) {
    cancelled = true;
    throw;
  }
}

}  // namespace gcl
