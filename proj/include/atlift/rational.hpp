#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace atlift {

// Exact rational scalar. mpq_class keeps values canonical (reduced, denom > 0)
// under arithmetic; parse_rational canonicalizes explicitly.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Accepts "p" or "p/q" with optional leading '-' on p, q > 0 after reduction.
inline std::optional<Rational> parse_rational(std::string_view s) {
    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        if (t[0] == '-' || t[0] == '+') t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view num = s, den = "1";
    if (auto pos = s.find('/'); pos != std::string_view::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
    }
    if (!digits(num) || !digits(den)) return std::nullopt;
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace atlift
