#include "dyne/thread_pool.hpp"

namespace dyne {

ThreadPool::ThreadPool(std::size_t threads) {
    const std::size_t extra = threads > 1 ? threads - 1 : 0;
    workers_.reserve(extra);
    for (std::size_t i = 0; i < extra; ++i) workers_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
    for (auto& w : workers_) w.join();
}

// Pulls indices of the current job until none remain. Called with mutex_ held.
void ThreadPool::drain() {
    while (next_ < job_size_) {
        const std::size_t i = next_++;
        ++active_;
        mutex_.unlock();
        try {
            (*job_)(i);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) error_ = std::current_exception();
        }
        mutex_.lock();
        --active_;
    }
    if (active_ == 0) done_.notify_all();
}

void ThreadPool::worker_loop() {
    std::size_t seen = 0;
    std::unique_lock lock(mutex_);
    while (true) {
        wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
        if (stopping_) return;
        seen = generation_;
        drain();
    }
}

void ThreadPool::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (workers_.empty() || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::lock_guard call(call_mutex_);
    std::unique_lock lock(mutex_);
    job_ = &fn;
    job_size_ = n;
    next_ = 0;
    error_ = nullptr;
    ++generation_;
    wake_.notify_all();
    drain();
    done_.wait(lock, [&] { return next_ >= job_size_ && active_ == 0; });
    job_ = nullptr;
    job_size_ = 0;
    if (auto err = std::exchange(error_, nullptr)) std::rethrow_exception(err);
}

void for_each_index(ThreadPool* pool, std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (pool) {
        pool->parallel_for(n, fn);
    } else {
        for (std::size_t i = 0; i < n; ++i) fn(i);
    }
}

}  // namespace dyne
