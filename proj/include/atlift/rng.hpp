#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

#include "atlift/rational.hpp"

namespace atlift {

// Deterministic across platforms: mt19937_64 output is pinned by the standard
// and bounded draws use rejection sampling, not uniform_int_distribution.
struct Rng {
    std::mt19937_64 eng;
    // Identity of this stream; forks mix it with the fork tag so sub-streams
    // do not depend on how many draws happened before the fork.
    std::uint64_t stream_id = 0;

    explicit Rng(std::uint64_t seed) : eng(seed), stream_id(seed) {}

    std::uint64_t next() { return eng(); }

    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
        while (true) {
            std::uint64_t x = eng();
            if (x < limit || rem == n - 1) return x % n;
        }
    }

    // Inclusive on both ends.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return below(2) == 1; }

    // Small exact scalar, numerator in [-max_num, max_num], denominator in [1, max_den].
    Rational rational(int max_num = 3, int max_den = 2) {
        Rational r(range(-max_num, max_num), range(1, max_den));
        r.canonicalize();
        return r;
    }

    Rational nonzero_rational(int max_num = 3, int max_den = 2) {
        while (true) {
            Rational r = rational(max_num, max_den);
            if (!is_zero(r)) return r;
        }
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    Rng fork(std::string_view tag) const { return Rng(splitmix64(stream_id ^ fnv1a(tag))); }
};

inline Rng seeded(std::uint64_t seed, std::string_view tag = "") {
    return Rng(splitmix64(seed ^ fnv1a(tag)));
}

}  // namespace atlift
