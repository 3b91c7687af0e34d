#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sgk {

template <class R>
struct CellOutcome {
    std::optional<R> value;
    std::string error;
    bool ok() const { return value.has_value(); }
};

// Runs fn(i) for i < count on up to `workers` threads. Results keep index order, so the
// output does not depend on scheduling; an exception is captured in its own cell.
template <class R, class F>
std::vector<CellOutcome<R>> run_cells(std::size_t count, int workers, F&& fn) {
    std::vector<CellOutcome<R>> out(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                out[i].value = fn(i);
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace sgk
