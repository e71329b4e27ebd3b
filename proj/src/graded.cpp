#include "atlift/graded.hpp"

#include <algorithm>

namespace atlift {

bool is_permutation(const Permutation& s) {
    std::vector<char> seen(s.size(), 0);
    for (int x : s) {
        if (x < 0 || x >= static_cast<int>(s.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

int perm_sign(const Permutation& s) {
    int flips = 0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) flips ^= 1;
    return flips ? -1 : 1;
}

Permutation compose_perm(const Permutation& s, const Permutation& t) {
    Permutation r(t.size());
    for (size_t i = 0; i < t.size(); ++i) r[i] = s[t[i]];
    return r;
}

int koszul_sign(const Permutation& s, const std::vector<int>& degrees) {
    int flips = 0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) {
                flips ^= 1;
                flips ^= (degrees[s[i]] & 1) & (degrees[s[j]] & 1);
            }
    return flips ? -1 : 1;
}

std::vector<Permutation> shuffles(int p, int q) {
    int n = p + q;
    std::vector<Permutation> out;
    if (p < 0 || q < 0) return out;
    std::vector<int> pick(p);
    for (int i = 0; i < p; ++i) pick[i] = i;
    while (true) {
        Permutation s(n);
        std::vector<char> used(n, 0);
        for (int i = 0; i < p; ++i) {
            s[i] = pick[i];
            used[pick[i]] = 1;
        }
        int at = p;
        for (int x = 0; x < n; ++x)
            if (!used[x]) s[at++] = x;
        out.push_back(std::move(s));
        if (p == 0 || q == 0) break;
        int i = p - 1;
        while (i >= 0 && pick[i] == n - p + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < p; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

}  // namespace atlift
