#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gazesa {

/// Raised on malformed input data (missing files, schema violations,
/// referential-integrity failures). The message names the offending
/// field or line.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised on invalid configuration (bad preset name, out-of-range k, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_str(const std::string& s) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Stable seed derivation for independent substreams. Never depends on
/// thread scheduling, so parallel generation stays reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& stream) {
    return splitmix64(seed ^ splitmix64(hash_str(stream)));
}

/// Chunked parallel loop. Each index writes only its own output slot, so
/// results are identical for every thread count.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t nt = threads <= 0 ? std::thread::hardware_concurrency() : static_cast<std::size_t>(threads);
    if (nt <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    nt = std::min(nt, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr err;
    std::mutex err_mu;
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += nt) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace gazesa
