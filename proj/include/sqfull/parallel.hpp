#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "sqfull/limits.hpp"

namespace sqfull {

// Evaluates fn(i) for i in [0, n) across worker threads and returns the
// results in index order. Callers reduce the vector sequentially, so the
// outcome does not depend on the number of threads.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn)
{
    std::vector<T> out(n);
    const std::size_t workers = std::min<std::size_t>(worker_count(), n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// Neumaier compensated summation.
class CompensatedSum
{
public:
    void add(double v)
    {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_  = 0.0;
    double comp_ = 0.0;
};

} // namespace sqfull
