#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace dyne {

/// Fixed set of workers running index-parallel loops. The calling thread
/// takes part in every loop, so a pool of size 1 runs inline.
class ThreadPool {
public:
    explicit ThreadPool(std::size_t threads);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    std::size_t size() const noexcept { return workers_.size() + 1; }

    /// Calls fn(i) for every i in [0, n) and waits. The first exception
    /// thrown by any call is rethrown here after all calls finish.
    /// Not reentrant: fn must not call parallel_for on the same pool.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

private:
    void worker_loop();
    void drain();

    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    std::mutex call_mutex_;

    const std::function<void(std::size_t)>* job_ = nullptr;
    std::size_t job_size_ = 0;
    std::size_t next_ = 0;
    std::size_t active_ = 0;
    std::size_t generation_ = 0;
    bool stopping_ = false;
    std::exception_ptr error_;
};

/// Runs fn(i) for i in [0, n) on `pool` when given, else sequentially.
void for_each_index(ThreadPool* pool, std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dyne
