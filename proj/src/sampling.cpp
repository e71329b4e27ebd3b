#include "atlift/sampling.hpp"

namespace atlift {

std::vector<std::vector<int>> standard_profiles() {
    return {{2}, {1, 1}, {2, 1}, {1, 2, 1}};
}

FreeComplex random_complex(const BGA& A, const std::vector<int>& profile, Rng& rng) {
    FreeComplex cx;
    cx.A = &A;
    int len = static_cast<int>(profile.size());
    for (int i = 0; i < len; ++i) cx.ranks[i - (len - 1)] = profile[i];

    RatMat prev;  // block below, already drawn
    bool have_prev = false;
    for (int i = 0; i + 1 < len; ++i) {
        int l = i - (len - 1);
        int rl = profile[i], rt = profile[i + 1];
        RatMat block(rt, rl);
        if (!have_prev) {
            for (int r = 0; r < rt; ++r)
                for (int c = 0; c < rl; ++c) block.at(r, c) = rng.rational(2, 1);
        } else {
            // Rows must pair to zero with the previous block.
            auto kernel = kernel_basis(prev.transpose());
            for (int r = 0; r < rt; ++r)
                for (const auto& v : kernel) {
                    Rational w = rng.rational(1, 1);
                    if (is_zero(w)) continue;
                    for (int c = 0; c < rl; ++c) block.at(r, c) += w * v[c];
                }
        }
        auto& rows = cx.delta[l];
        rows.assign(rt, std::vector<BGAElement>(rl));
        for (int r = 0; r < rt; ++r)
            for (int c = 0; c < rl; ++c)
                if (!is_zero(block.at(r, c)))
                    rows[r][c] = BGAElement::single(A.unit, block.at(r, c));
        prev = block;
        have_prev = true;
    }
    return cx;
}

Connection random_connection(const FreeComplex& cx, Rng& rng) {
    const BGA& A = *cx.A;
    Connection conn;
    conn.cx = &cx;
    std::vector<int> basis10 = A.basis_with([](Bidegree bd) { return bd == Bidegree{1, 0}; });
    for (const auto& [l, r] : cx.ranks) {
        auto& rows = conn.gamma[l];
        rows.assign(r, std::vector<BGAElement>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k : basis10) {
                    if (rng.below(2) == 0) continue;
                    Rational v = rng.rational(2, 1);
                    if (!is_zero(v)) rows[i][j] += BGAElement::single(k, v);
                }
    }
    return conn;
}

std::vector<HKey> dgla_basis_keys(const FreeComplex& cx) {
    const BGA& A = *cx.A;
    std::vector<HKey> keys;
    for (int k = 0; k < A.dim(); ++k) {
        if (A.basis[k].bd.p != 0) continue;
        for (const auto& [l, rl] : cx.ranks)
            for (const auto& [l2, rl2] : cx.ranks) keys.push_back({k, l, l2 - l});
    }
    return keys;
}

std::vector<HKey> dgla_basis_keys_degree(const FreeComplex& cx, int degree) {
    std::vector<HKey> keys;
    for (const HKey& key : dgla_basis_keys(cx))
        if (cx.A->basis[key.k].bd.q + key.n == degree) keys.push_back(key);
    return keys;
}

HomForm random_homform_p0(const FreeComplex& cx, int degree, Rng& rng) {
    HomForm out(cx);
    for (const HKey& key : dgla_basis_keys_degree(cx, degree)) {
        int rt = cx.rank(key.l + key.n), rl = cx.rank(key.l);
        RatMat m(rt, rl);
        bool nonzero = false;
        for (int i = 0; i < rt; ++i)
            for (int j = 0; j < rl; ++j) {
                if (rng.below(2) == 0) continue;
                m.at(i, j) = rng.rational(2, 1);
                nonzero = nonzero || !is_zero(m.at(i, j));
            }
        if (nonzero) out.add_term(key, m);
    }
    return out;
}

}  // namespace atlift
