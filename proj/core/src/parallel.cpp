#include "rusim/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rusim {

int configured_worker_count() {
    int workers = 0;
    if (const char* env = std::getenv("RUS_SIM_THREADS")) {
        try {
            workers = std::stoi(env);
        } catch (const std::exception&) {
            throw std::runtime_error("RUS_SIM_THREADS must be a non-negative integer");
        }
        if (workers < 0) {
            throw std::runtime_error("RUS_SIM_THREADS must be a non-negative integer");
        }
    }
    if (workers == 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
    }
    return std::max(workers, 1);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& block_fn) {
    if (n <= 0) return;
    std::int64_t workers = std::min<std::int64_t>(configured_worker_count(), n);
    if (workers == 1) {
        block_fn(0, n);
        return;
    }
    std::int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
        std::int64_t begin = w * chunk;
        std::int64_t end = std::min(begin + chunk, n);
        if (begin >= end) break;
        threads.emplace_back([&block_fn, begin, end] { block_fn(begin, end); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace rusim
