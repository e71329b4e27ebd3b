#include "atlift/homcomplex.hpp"

#include <algorithm>
#include <cassert>

namespace atlift {

std::vector<Violation> validate_complex(const FreeComplex& cx) {
    std::vector<Violation> out;
    if (!cx.A) {
        out.push_back({"complex-structure", "no base algebra"});
        return out;
    }
    const BGA& A = *cx.A;
    for (const auto& [l, r] : cx.ranks)
        if (r <= 0)
            out.push_back({"complex-structure", "rank at degree " + std::to_string(l) + " not positive"});

    for (const auto& [l, rows] : cx.delta) {
        int rl = cx.rank(l), rt = cx.rank(l + 1);
        if (static_cast<int>(rows.size()) != rt) {
            out.push_back({"delta-shape", "block at degree " + std::to_string(l) + " has wrong row count"});
            continue;
        }
        for (int i = 0; i < rt; ++i) {
            if (static_cast<int>(rows[i].size()) != rl) {
                out.push_back({"delta-shape", "block at degree " + std::to_string(l) + " has wrong column count"});
                break;
            }
            for (int j = 0; j < rl; ++j) {
                const BGAElement& e = rows[i][j];
                for (const auto& [k, v] : e.c)
                    if (!(A.basis[k].bd == Bidegree{0, 0}))
                        out.push_back({"delta-bidegree", "entry (" + std::to_string(i) + "," +
                                                             std::to_string(j) + ") at degree " +
                                                             std::to_string(l) + " not in bidegree (0,0)"});
                if (!A.apply_delbar(e).is_zero())
                    out.push_back({"delta-delbar-closed", "entry (" + std::to_string(i) + "," +
                                                              std::to_string(j) + ") at degree " +
                                                              std::to_string(l) + " not closed"});
            }
        }
    }

    for (const auto& [l, rows] : cx.delta) {
        auto up = cx.delta.find(l + 1);
        if (up == cx.delta.end()) continue;
        int rl = cx.rank(l), rm = cx.rank(l + 1), rt = cx.rank(l + 2);
        if (static_cast<int>(rows.size()) != rm || static_cast<int>(up->second.size()) != rt) continue;
        for (int i = 0; i < rt; ++i)
            for (int j = 0; j < rl; ++j) {
                BGAElement acc;
                for (int k = 0; k < rm; ++k) acc += A.mul(up->second[i][k], rows[k][j]);
                if (!acc.is_zero()) {
                    out.push_back({"delta-squared", "square nonzero at degree " + std::to_string(l)});
                    i = rt;
                    break;
                }
            }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

HomForm& HomForm::operator*=(const Rational& s) {
    if (atlift::is_zero(s)) {
        t.clear();
        return *this;
    }
    for (auto& [k, m] : t) m *= s;
    return *this;
}

std::optional<int> HomForm::degree() const {
    if (t.empty()) return std::nullopt;
    int d = term_degree(t.begin()->first);
    for (const auto& [key, m] : t)
        if (term_degree(key) != d) return std::nullopt;
    return d;
}

SectionForm& SectionForm::add_term(const SKey& key, const std::vector<Rational>& v) {
    bool zero = std::all_of(v.begin(), v.end(), [](const Rational& x) { return atlift::is_zero(x); });
    if (zero) return *this;
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, v);
    } else {
        for (size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
        if (std::all_of(it->second.begin(), it->second.end(),
                        [](const Rational& x) { return atlift::is_zero(x); }))
            t.erase(it);
    }
    return *this;
}

SectionForm act(const HomForm& h, const SectionForm& s) {
    assert(h.cx == s.cx);
    const BGA& A = *h.cx->A;
    SectionForm out(*h.cx);
    for (const auto& [hk, m] : h.t) {
        for (const auto& [sk, v] : s.t) {
            if (sk.l != hk.l) continue;
            int sign = (hk.n & 1) && (A.basis[sk.k].bd.total() & 1) ? -1 : 1;
            std::vector<Rational> w(static_cast<size_t>(m.r), Rational(0));
            for (int i = 0; i < m.r; ++i)
                for (int j = 0; j < m.c; ++j)
                    if (!is_zero(m.at(i, j))) w[i] += m.at(i, j) * v[j];
            BGAElement coeff = A.mul(BGAElement::single(hk.k), BGAElement::single(sk.k));
            for (const auto& [k2, c2] : coeff.c) {
                std::vector<Rational> scaled = w;
                for (auto& x : scaled) x *= c2 * sign;
                out.add_term({k2, hk.l + hk.n}, scaled);
            }
        }
    }
    return out;
}

HomForm compose(const HomForm& a, const HomForm& b) {
    assert(a.cx == b.cx || !a.cx || !b.cx);
    const FreeComplex* cx = a.cx ? a.cx : b.cx;
    HomForm out;
    out.cx = cx;
    if (!cx) return out;
    const BGA& A = *cx->A;
    for (const auto& [ka, ma] : a.t)
        for (const auto& [kb, mb] : b.t) {
            if (ka.l != kb.l + kb.n) continue;
            int sign = (ka.n & 1) && (A.basis[kb.k].bd.total() & 1) ? -1 : 1;
            BGAElement coeff = A.mul(BGAElement::single(ka.k), BGAElement::single(kb.k));
            if (coeff.is_zero()) continue;
            RatMat prod = ma * mb;
            if (prod.is_zero()) continue;
            for (const auto& [k2, c2] : coeff.c)
                out.add_term({k2, kb.l, ka.n + kb.n}, (c2 * Rational(sign)) * prod);
        }
    return out;
}

HomForm bracket(const HomForm& a, const HomForm& b) {
    HomForm out = compose(a, b);
    if (a.is_zero() || b.is_zero()) return out;
    auto da = a.degree(), db = b.degree();
    assert(da && db);
    int sign = (*da & 1) && (*db & 1) ? -1 : 1;
    out -= Rational(sign) * compose(b, a);
    return out;
}

static HomForm apply_coeff_table(const HomForm& h, const std::vector<BGAElement>& table) {
    HomForm out;
    out.cx = h.cx;
    for (const auto& [key, m] : h.t)
        for (const auto& [k2, c2] : table[key.k].c) out.add_term({k2, key.l, key.n}, c2 * m);
    return out;
}

HomForm delbar(const HomForm& h) { return apply_coeff_table(h, h.cx->A->delbar_table); }
HomForm partial_coeffs(const HomForm& h) { return apply_coeff_table(h, h.cx->A->partial_table); }

HomForm delta_form(const FreeComplex& cx) {
    HomForm out(cx);
    for (const auto& [l, rows] : cx.delta) {
        int rt = cx.rank(l + 1), rl = cx.rank(l);
        for (int i = 0; i < rt; ++i)
            for (int j = 0; j < rl; ++j)
                for (const auto& [k, v] : rows[i][j].c) {
                    RatMat m(rt, rl);
                    m.at(i, j) = v;
                    out.add_term({k, l, 1}, m);
                }
    }
    return out;
}

HomForm delta_bracket(const HomForm& h) { return bracket(delta_form(*h.cx), h); }

HomForm hom_d(const HomForm& h) { return delbar(h) + delta_bracket(h); }

BGAElement supertrace(const HomForm& h) {
    BGAElement out;
    for (const auto& [key, m] : h.t) {
        if (key.n != 0) continue;
        int sign = (key.l % 2 != 0) ? -1 : 1;
        out.add(key.k, Rational(sign) * m.trace());
    }
    return out;
}

HomForm identity_homform(const FreeComplex& cx) {
    HomForm out(cx);
    for (const auto& [l, r] : cx.ranks) out.add_term({cx.A->unit, l, 0}, RatMat::identity(r));
    return out;
}

HomForm basis_homform(const FreeComplex& cx, const HKey& key, int i, int j) {
    HomForm out(cx);
    out.add_term(key, RatMat::unit(cx.rank(key.l + key.n), cx.rank(key.l), i, j));
    return out;
}

TotalSpace::TotalSpace(const FreeComplex& c) : cx(&c) {
    for (int k = 0; k < c.A->dim(); ++k)
        for (const auto& [l, r] : c.ranks)
            for (int i = 0; i < r; ++i) {
                index[{k, l, i}] = static_cast<int>(basis.size());
                basis.emplace_back(k, l, i);
            }
}

void OperatorMatrix::add(int i, int j, const Rational& v) {
    if (atlift::is_zero(v)) return;
    auto& column = col[j];
    auto it = column.find(i);
    if (it == column.end()) {
        column.emplace(i, v);
    } else {
        it->second += v;
        if (atlift::is_zero(it->second)) column.erase(it);
    }
    if (column.empty()) col.erase(j);
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& o) {
    assert(dim == o.dim);
    for (const auto& [j, column] : o.col)
        for (const auto& [i, v] : column) add(i, j, v);
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& o) {
    assert(dim == o.dim);
    for (const auto& [j, column] : o.col)
        for (const auto& [i, v] : column) add(i, j, -v);
    return *this;
}

OperatorMatrix op_compose(const OperatorMatrix& a, const OperatorMatrix& b) {
    assert(a.dim == b.dim);
    OperatorMatrix out;
    out.dim = a.dim;
    out.deg = a.deg + b.deg;
    for (const auto& [j, bcol] : b.col)
        for (const auto& [k, bv] : bcol) {
            auto it = a.col.find(k);
            if (it == a.col.end()) continue;
            for (const auto& [i, av] : it->second) out.add(i, j, av * bv);
        }
    return out;
}

OperatorMatrix op_commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out = op_compose(a, b);
    int sign = (a.deg & 1) && (b.deg & 1) ? -1 : 1;
    OperatorMatrix rev = op_compose(b, a);
    if (sign < 0)
        out += rev;
    else
        out -= rev;
    return out;
}

OperatorMatrix to_operator(const TotalSpace& ts, const HomForm& h) {
    OperatorMatrix out;
    out.dim = ts.dim();
    out.deg = h.degree().value_or(0);
    for (int idx = 0; idx < ts.dim(); ++idx) {
        auto [k, l, i] = ts.basis[idx];
        SectionForm s(*ts.cx);
        std::vector<Rational> e(static_cast<size_t>(ts.cx->rank(l)), Rational(0));
        e[i] = 1;
        s.add_term({k, l}, e);
        SectionForm r = act(h, s);
        for (const auto& [sk, v] : r.t)
            for (int i2 = 0; i2 < static_cast<int>(v.size()); ++i2) {
                if (is_zero(v[i2])) continue;
                auto it = ts.index.find({sk.k, sk.l, i2});
                assert(it != ts.index.end());
                out.add(it->second, idx, v[i2]);
            }
    }
    return out;
}

static OperatorMatrix coeff_table_op(const TotalSpace& ts, const std::vector<BGAElement>& table) {
    OperatorMatrix out;
    out.dim = ts.dim();
    out.deg = 1;
    for (int idx = 0; idx < ts.dim(); ++idx) {
        auto [k, l, i] = ts.basis[idx];
        for (const auto& [k2, v] : table[k].c) out.add(ts.index.at({k2, l, i}), idx, v);
    }
    return out;
}

OperatorMatrix delbar_op(const TotalSpace& ts) { return coeff_table_op(ts, ts.cx->A->delbar_table); }
OperatorMatrix partial_op(const TotalSpace& ts) { return coeff_table_op(ts, ts.cx->A->partial_table); }

OperatorMatrix oracle_compose(const TotalSpace& ts, const HomForm& a, const HomForm& b) {
    return op_compose(to_operator(ts, a), to_operator(ts, b));
}

}  // namespace atlift
