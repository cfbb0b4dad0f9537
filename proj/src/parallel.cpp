#include "l2pos/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace l2pos {

int thread_count() {
    static const int cached = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw < 1) hw = 1;
        if (const char* env = std::getenv("L2POS_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return std::min(v, hw);
        }
        return std::min(hw, 8);
    }();
    return cached;
}

void parallel_chunks(std::int64_t count, int nchunks,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (count <= 0) return;
    if (nchunks < 1) nchunks = 1;
    if (static_cast<std::int64_t>(nchunks) > count) nchunks = static_cast<int>(count);
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            const int chunk = next.fetch_add(1);
            if (chunk >= nchunks) break;
            const std::int64_t b = count * chunk / nchunks;
            const std::int64_t e = count * (chunk + 1) / nchunks;
            fn(chunk, b, e);
        }
    };
    const int threads = std::min(thread_count(), nchunks);
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int i = 0; i < threads - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

} // namespace l2pos
