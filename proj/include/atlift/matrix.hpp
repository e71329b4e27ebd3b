#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "atlift/rational.hpp"

namespace atlift {

// Dense exact matrix, row major. Sizes stay small (tens, not thousands).
struct RatMat {
    int r = 0;
    int c = 0;
    std::vector<Rational> a;

    RatMat() = default;
    RatMat(int rows, int cols) : r(rows), c(cols), a(static_cast<size_t>(rows) * cols, Rational(0)) {}

    Rational& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }

    static RatMat identity(int n) {
        RatMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static RatMat unit(int rows, int cols, int i, int j) {
        RatMat m(rows, cols);
        m.at(i, j) = 1;
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!atlift::is_zero(x)) return false;
        return true;
    }

    Rational trace() const {
        assert(r == c);
        Rational t(0);
        for (int i = 0; i < r; ++i) t += at(i, i);
        return t;
    }

    RatMat transpose() const {
        RatMat m(c, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    friend bool operator==(const RatMat& x, const RatMat& y) {
        return x.r == y.r && x.c == y.c && x.a == y.a;
    }

    RatMat& operator+=(const RatMat& o) {
        assert(r == o.r && c == o.c);
        for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
        return *this;
    }

    RatMat& operator-=(const RatMat& o) {
        assert(r == o.r && c == o.c);
        for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
        return *this;
    }

    RatMat& operator*=(const Rational& s) {
        for (auto& x : a) x *= s;
        return *this;
    }

    friend RatMat operator+(RatMat x, const RatMat& y) { return x += y; }
    friend RatMat operator-(RatMat x, const RatMat& y) { return x -= y; }
    friend RatMat operator*(const Rational& s, RatMat m) { return m *= s; }

    friend RatMat operator*(const RatMat& x, const RatMat& y) {
        assert(x.c == y.r);
        RatMat m(x.r, y.c);
        for (int i = 0; i < x.r; ++i)
            for (int k = 0; k < x.c; ++k) {
                const Rational& v = x.at(i, k);
                if (atlift::is_zero(v)) continue;
                for (int j = 0; j < y.c; ++j)
                    if (!atlift::is_zero(y.at(k, j))) m.at(i, j) += v * y.at(k, j);
            }
        return m;
    }
};

// Reduces m in place; returns pivot column indices.
inline std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.c && row < m.r; ++col) {
        int p = -1;
        for (int i = row; i < m.r; ++i)
            if (!is_zero(m.at(i, col))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.c; ++j) std::swap(m.at(p, j), m.at(row, j));
        Rational inv = 1 / m.at(row, col);
        for (int j = col; j < m.c; ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.r; ++i) {
            if (i == row || is_zero(m.at(i, col))) continue;
            Rational f = m.at(i, col);
            for (int j = col; j < m.c; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

// Basis of { x : m x = 0 }.
inline std::vector<std::vector<Rational>> kernel_basis(RatMat m) {
    std::vector<int> pivots = rref(m);
    std::vector<char> is_pivot(m.c, 0);
    for (int p : pivots) is_pivot[p] = 1;
    std::vector<std::vector<Rational>> out;
    for (int fc = 0; fc < m.c; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> v(m.c, Rational(0));
        v[fc] = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = -m.at(static_cast<int>(pi), fc);
        out.push_back(std::move(v));
    }
    return out;
}

// One solution of m x = b, if any.
inline std::optional<std::vector<Rational>> solve(const RatMat& m, const std::vector<Rational>& b) {
    assert(static_cast<int>(b.size()) == m.r);
    RatMat aug(m.r, m.c + 1);
    for (int i = 0; i < m.r; ++i) {
        for (int j = 0; j < m.c; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.c) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.c) return std::nullopt;
    std::vector<Rational> x(m.c, Rational(0));
    for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug.at(static_cast<int>(pi), m.c);
    return x;
}

inline RatMat columns_to_matrix(const std::vector<std::vector<Rational>>& cols, int rows) {
    RatMat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.c; ++j)
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    return m;
}

}  // namespace atlift
