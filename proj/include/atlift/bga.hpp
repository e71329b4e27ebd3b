#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atlift/graded.hpp"
#include "atlift/rational.hpp"

namespace atlift {

struct BasisElt {
    std::string name;
    Bidegree bd;
};

// Sparse element in the basis of a fixed algebra: index -> coefficient.
struct BGAElement {
    std::map<int, Rational> c;

    bool is_zero() const { return c.empty(); }

    BGAElement& add(int k, const Rational& v) {
        if (atlift::is_zero(v)) return *this;
        auto it = c.find(k);
        if (it == c.end()) {
            c.emplace(k, v);
        } else {
            it->second += v;
            if (atlift::is_zero(it->second)) c.erase(it);
        }
        return *this;
    }

    BGAElement& operator+=(const BGAElement& o) {
        for (const auto& [k, v] : o.c) add(k, v);
        return *this;
    }

    BGAElement& operator-=(const BGAElement& o) {
        for (const auto& [k, v] : o.c) add(k, -v);
        return *this;
    }

    BGAElement& operator*=(const Rational& s) {
        if (atlift::is_zero(s)) {
            c.clear();
            return *this;
        }
        for (auto& [k, v] : c) v *= s;
        return *this;
    }

    friend BGAElement operator+(BGAElement a, const BGAElement& b) { return a += b; }
    friend BGAElement operator-(BGAElement a, const BGAElement& b) { return a -= b; }
    friend BGAElement operator*(const Rational& s, BGAElement a) { return a *= s; }
    friend bool operator==(const BGAElement& a, const BGAElement& b) { return a.c == b.c; }

    static BGAElement single(int k, Rational v = Rational(1)) {
        BGAElement e;
        e.add(k, v);
        return e;
    }
};

// Finite-dimensional bigraded algebra with two anticommuting differentials,
// one of bidegree (1,0) and one of bidegree (0,1). Tables are total: the
// product and both differentials are stored on every basis element.
struct BGA {
    std::string name;
    std::vector<BasisElt> basis;
    int unit = 0;
    std::vector<BGAElement> product_table;  // dim*dim entries, row-major [i*dim + j]
    std::vector<BGAElement> partial_table;  // d of bidegree (1,0)
    std::vector<BGAElement> delbar_table;   // d of bidegree (0,1)

    int dim() const { return static_cast<int>(basis.size()); }

    const BGAElement& prod(int i, int j) const {
        return product_table[static_cast<size_t>(i) * dim() + j];
    }
    BGAElement& prod(int i, int j) { return product_table[static_cast<size_t>(i) * dim() + j]; }

    BGAElement mul(const BGAElement& x, const BGAElement& y) const;
    BGAElement apply_partial(const BGAElement& x) const;
    BGAElement apply_delbar(const BGAElement& x) const;
    BGAElement apply_d(const BGAElement& x) const { return apply_partial(x) + apply_delbar(x); }

    BGAElement unit_elt() const { return BGAElement::single(unit); }
    BGAElement scalar(const Rational& s) const { return BGAElement::single(unit, s); }

    // Bidegree if homogeneous (zero counts as any bidegree and returns nullopt).
    std::optional<Bidegree> bidegree_of(const BGAElement& x) const;

    std::vector<int> basis_with(auto&& pred) const {
        std::vector<int> out;
        for (int k = 0; k < dim(); ++k)
            if (pred(basis[k].bd)) out.push_back(k);
        return out;
    }

    std::string elt_str(const BGAElement& x) const;
};

struct Violation {
    std::string code;
    std::string detail;

    friend bool operator==(const Violation& a, const Violation& b) {
        return a.code == b.code && a.detail == b.detail;
    }
    friend bool operator<(const Violation& a, const Violation& b) {
        return a.code != b.code ? a.code < b.code : a.detail < b.detail;
    }
};

// Full axiom check: unit, bidegree homogeneity of all tables, graded
// commutativity, associativity, Leibniz for both differentials, squares and
// the mixed anticommutator of the differentials. Returns sorted violations.
std::vector<Violation> validate(const BGA& A);

// Generator of an exterior model; differentials are linear combinations of
// monomials, given after all generators are known.
struct GenSpec {
    std::string name;
    Bidegree bd;
};

// Exterior algebra on odd generators, basis indexed by subset bitmask in
// increasing mask order (so index 0 is the unit). Differentials are supplied
// on generators as elements in the monomial basis and extended as graded
// derivations.
BGA exterior_model(std::string name, const std::vector<GenSpec>& gens,
                   const std::map<int, BGAElement>& partial_on_gens,
                   const std::map<int, BGAElement>& delbar_on_gens);

// point | torus1 | torus2 | delbar-toy | iwasawa
std::optional<BGA> canned_model(std::string_view name);
std::vector<std::string> canned_model_names();

// The quotient that keeps only holomorphic degrees 0 and 1, with basis degree
// shifted down by two. The induced differential is the total one with any
// holomorphic-degree-2 output discarded.
struct TruncatedTarget {
    const BGA* A = nullptr;

    explicit TruncatedTarget(const BGA& a) : A(&a) {}

    bool keeps(int k) const { return A->basis[k].bd.p <= 1; }
    int degree_of_basis(int k) const { return A->basis[k].bd.total() - 2; }

    BGAElement truncate(const BGAElement& x) const {
        BGAElement out;
        for (const auto& [k, v] : x.c)
            if (keeps(k)) out.add(k, v);
        return out;
    }

    BGAElement truncated_d(const BGAElement& x) const { return truncate(A->apply_d(truncate(x))); }

    std::vector<int> basis_in_degree(int shifted_degree) const {
        std::vector<int> out;
        for (int k = 0; k < A->dim(); ++k)
            if (keeps(k) && degree_of_basis(k) == shifted_degree) out.push_back(k);
        return out;
    }
};

}  // namespace atlift
