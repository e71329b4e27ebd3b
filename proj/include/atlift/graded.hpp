#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace atlift {

using Degree = int;

struct Bidegree {
    int p = 0;
    int q = 0;

    int total() const { return p + q; }
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

// perm[i] is the index of the element placed at slot i, so the permuted word
// is w[i] = v[perm[i]].
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& s);

// Parity of the inversion count, +1 or -1.
int perm_sign(const Permutation& s);

// (s*t)[i] = s[t[i]]; applying s then t to words equals applying s*t once.
Permutation compose_perm(const Permutation& s, const Permutation& t);

template <class T>
std::vector<T> apply_perm(const Permutation& s, const std::vector<T>& v) {
    std::vector<T> w;
    w.reserve(s.size());
    for (int i : s) w.push_back(v[i]);
    return w;
}

// Sign picked up when reordering graded symbols of the given degrees by s:
// sign(s) times (-1)^(deg_a*deg_b) for every inversion pair (a before b
// in the output that was b before a in the input).
int koszul_sign(const Permutation& s, const std::vector<int>& degrees);

// All permutations of {0..p+q-1} increasing on the first p and last q slots.
std::vector<Permutation> shuffles(int p, int q);

std::uint64_t binomial(int n, int k);

}  // namespace atlift
