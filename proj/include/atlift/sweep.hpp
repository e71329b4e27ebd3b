#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace atlift {

// A failed item from a verification sweep.
struct SweepHit {
    std::int64_t index = 0;
    std::string what;

    friend bool operator==(const SweepHit& a, const SweepHit& b) {
        return a.index == b.index && a.what == b.what;
    }
    friend bool operator<(const SweepHit& a, const SweepHit& b) {
        return a.index != b.index ? a.index < b.index : a.what < b.what;
    }
};

// ATLIFT_THREADS caps the worker count; unset or 0 means the OpenMP default.
inline int sweep_threads() {
    static int cached = [] {
        const char* env = std::getenv("ATLIFT_THREADS");
        int want = 0;
        if (env && *env) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v > 0 && v <= 4096) want = static_cast<int>(v);
        }
#ifdef _OPENMP
        if (want == 0) want = omp_get_max_threads();
#else
        if (want == 0) want = 1;
#endif
        return want;
    }();
    return cached;
}

// Reference implementation: runs fn(i) for i in [0, n) in order.
// fn returns an empty string for a pass, or a description of the failure.
template <class Fn>
std::vector<SweepHit> sweep_serial(std::int64_t n, Fn&& fn) {
    std::vector<SweepHit> hits;
    for (std::int64_t i = 0; i < n; ++i) {
        std::string msg = fn(i);
        if (!msg.empty()) hits.push_back({i, std::move(msg)});
    }
    return hits;
}

// OpenMP version; results are merged and sorted so output matches sweep_serial.
template <class Fn>
std::vector<SweepHit> sweep_parallel(std::int64_t n, Fn&& fn) {
#ifdef _OPENMP
    int workers = sweep_threads();
    std::vector<std::vector<SweepHit>> parts(workers);
#pragma omp parallel num_threads(workers)
    {
        int me = omp_get_thread_num();
        std::vector<SweepHit> local;
#pragma omp for schedule(dynamic, 64) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            std::string msg = fn(i);
            if (!msg.empty()) local.push_back({i, std::move(msg)});
        }
        parts[me] = std::move(local);
    }
    std::vector<SweepHit> hits;
    for (auto& p : parts)
        for (auto& h : p) hits.push_back(std::move(h));
    std::sort(hits.begin(), hits.end());
    return hits;
#else
    return sweep_serial(n, std::forward<Fn>(fn));
#endif
}

template <class Fn>
std::vector<SweepHit> sweep(std::int64_t n, Fn&& fn) {
    if (sweep_threads() > 1 && n > 128) return sweep_parallel(n, std::forward<Fn>(fn));
    return sweep_serial(n, std::forward<Fn>(fn));
}

}  // namespace atlift
