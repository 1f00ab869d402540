#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace scanspectra {

// Worker count: SCAN_SPECTRA_THREADS overrides it, default is machine
// parallelism.
inline int worker_count() {
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const char* env = std::getenv("SCAN_SPECTRA_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested >= 1) workers = requested;
        } catch (...) {
            // ignore malformed values
        }
    }
    return workers;
}

// Runs body(i) for i in [begin, end). Results must be written to per-index
// slots so the outcome is independent of scheduling.
template <typename Body>
void parallel_for(long begin, long end, Body&& body) {
    const long count = end - begin;
    if (count <= 0) return;
    const int workers = static_cast<int>(std::min<long>(worker_count(), count));
    if (workers <= 1) {
        for (long i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (long i = begin + w; i < end; i += workers) body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (std::thread& thread : threads) thread.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace scanspectra
