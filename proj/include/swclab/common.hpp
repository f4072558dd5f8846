#pragma once

// Shared configuration, error types, deterministic RNG and a slot-based
// parallel_for used by the pair scans. Everything here is value-semantic;
// there is no global mutable state.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace swclab {

inline constexpr const char* kToolName = "swclab";
inline constexpr const char* kToolVersion = "0.1.0";

struct Config {
    double dedup_tol = 1e-12;    // points closer than this are duplicates
    double numeric_tol = 1e-8;   // general-purpose tolerance for verdicts
    long long budget_cap = 1'000'000;  // candidate-subset cap for exact derivations
    int jobs = 1;
};

// Raised when a combinatorial search would exceed its configured cap.
// An explicit failure is preferred over a silently incomplete answer.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, long long count, long long cap)
        : std::runtime_error(what), count(count), cap(cap) {}
    long long count;
    long long cap;
};

// splitmix64: tiny, seedable, identical output on every platform.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    // standard normal via Box-Muller
    double normal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }
};

// Runs fn(i) for i in [0, n) over `jobs` threads; each index writes only its
// own slot, so results are identical to the sequential order. The lowest-index
// exception wins and is rethrown after all workers join.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    if (jobs <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    jobs = std::min<int>(jobs, n);
    std::vector<std::exception_ptr> errs(static_cast<size_t>(n));
    std::vector<std::thread> pool;
    pool.reserve(size_t(jobs));
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += jobs) {
                try {
                    fn(i);
                } catch (...) {
                    errs[size_t(i)] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace swclab
