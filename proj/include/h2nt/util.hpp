#ifndef H2NT_UTIL_HPP
#define H2NT_UTIL_HPP

#include <charconv>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace h2nt {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct sampling_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
    convergence_error(const std::string& msg, double residual)
        : std::runtime_error(msg), achieved_residual(residual) {}
    double achieved_residual;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derive an independent RNG stream id from a base seed and a stream index.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
}
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

// Uniform double in [0,1) from the raw 64-bit stream; pinned arithmetic so the
// sequence does not depend on the standard library's distribution internals.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) without distribution objects.
inline int uniform_below(std::mt19937_64& rng, int n) {
    int v = static_cast<int>(uniform01(rng) * n);
    return v < n ? v : n - 1;
}

// Shortest round-trip text for a double ("1" for 1.0, "2.5" for 2.5).
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Chunked parallel loop over [0, n). fn(begin, end) must only touch its own
// range; with threads <= 1 it degenerates to a plain call.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(threads, n);
    std::size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

// Worker cap: H2NT_THREADS if set, else logical core count.
inline int threads_from_env() {
    if (const char* env = std::getenv("H2NT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace h2nt

#endif
