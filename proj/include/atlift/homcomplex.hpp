#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "atlift/bga.hpp"
#include "atlift/matrix.hpp"

namespace atlift {

// Bounded complex of free modules over a BGA. ranks[l] is the rank of the
// degree-l summand; delta[l] is the rank(l+1) x rank(l) matrix of the
// differential out of degree l. Entries live in bidegree (0,0) and must be
// killed by the (0,1) differential of the base; delta composed with itself
// must vanish.
struct FreeComplex {
    const BGA* A = nullptr;
    std::map<int, int> ranks;
    std::map<int, std::vector<std::vector<BGAElement>>> delta;

    int rank(int l) const {
        auto it = ranks.find(l);
        return it == ranks.end() ? 0 : it->second;
    }
    int total_rank() const {
        int t = 0;
        for (const auto& [l, r] : ranks) t += r;
        return t;
    }
    std::vector<int> degrees() const {
        std::vector<int> out;
        for (const auto& [l, r] : ranks) out.push_back(l);
        return out;
    }
    const BGAElement* delta_entry(int l, int i, int j) const {
        auto it = delta.find(l);
        if (it == delta.end()) return nullptr;
        return &it->second[i][j];
    }
};

std::vector<Violation> validate_complex(const FreeComplex& cx);

// One graded slot of a form-valued endomorphism: coefficient basis index k,
// source degree l, degree shift n. The matrix is rank(l+n) x rank(l).
struct HKey {
    int k = 0;
    int l = 0;
    int n = 0;
    friend auto operator<=>(const HKey&, const HKey&) = default;
};

struct HomForm {
    const FreeComplex* cx = nullptr;
    std::map<HKey, RatMat> t;

    HomForm() = default;
    explicit HomForm(const FreeComplex& c) : cx(&c) {}

    bool is_zero() const { return t.empty(); }

    HomForm& add_term(const HKey& key, const RatMat& m) {
        if (m.is_zero()) return *this;
        auto it = t.find(key);
        if (it == t.end()) {
            t.emplace(key, m);
        } else {
            it->second += m;
            if (it->second.is_zero()) t.erase(it);
        }
        return *this;
    }

    HomForm& operator+=(const HomForm& o) {
        for (const auto& [k, m] : o.t) add_term(k, m);
        return *this;
    }
    HomForm& operator-=(const HomForm& o) {
        for (const auto& [k, m] : o.t) add_term(k, Rational(-1) * m);
        return *this;
    }
    HomForm& operator*=(const Rational& s);
    friend HomForm operator+(HomForm a, const HomForm& b) { return a += b; }
    friend HomForm operator-(HomForm a, const HomForm& b) { return a -= b; }
    friend HomForm operator*(const Rational& s, HomForm a) { return a *= s; }
    friend bool operator==(const HomForm& a, const HomForm& b) { return a.t == b.t; }

    // Form degree of one term: coefficient total degree plus shift.
    int term_degree(const HKey& key) const { return cx->A->basis[key.k].bd.total() + key.n; }

    // Total degree if homogeneous and nonzero.
    std::optional<int> degree() const;
};

struct SKey {
    int k = 0;
    int l = 0;
    friend auto operator<=>(const SKey&, const SKey&) = default;
};

// Form-valued section: coefficient basis index and module degree -> column.
struct SectionForm {
    const FreeComplex* cx = nullptr;
    std::map<SKey, std::vector<Rational>> t;

    SectionForm() = default;
    explicit SectionForm(const FreeComplex& c) : cx(&c) {}

    bool is_zero() const { return t.empty(); }
    SectionForm& add_term(const SKey& key, const std::vector<Rational>& v);
    friend bool operator==(const SectionForm& a, const SectionForm& b) { return a.t == b.t; }
};

// Evaluation (w.f)(e.s) = (-1)^(|f| |e|) (w e).f(s).
SectionForm act(const HomForm& h, const SectionForm& s);

// (w.f)(e.g) = (-1)^(|f| |e|) (w e).(f g), extended bilinearly.
HomForm compose(const HomForm& a, const HomForm& b);

// Graded commutator; both arguments must be homogeneous.
HomForm bracket(const HomForm& a, const HomForm& b);

// Coefficientwise differentials of the base algebra.
HomForm delbar(const HomForm& h);
HomForm partial_coeffs(const HomForm& h);

// The complex differential as a degree-one endomorphism with constant
// coefficients, and the bracket with it.
HomForm delta_form(const FreeComplex& cx);
HomForm delta_bracket(const HomForm& h);

// Differential of the endomorphism complex: delbar plus bracket with delta.
HomForm hom_d(const HomForm& h);

// Supertrace into the base algebra; only shift-zero terms contribute, with
// alternating sign in the module degree.
BGAElement supertrace(const HomForm& h);

HomForm identity_homform(const FreeComplex& cx);
HomForm basis_homform(const FreeComplex& cx, const HKey& key, int i, int j);

// Flattened module basis of A (x) E: triples (k, l, i).
struct TotalSpace {
    const FreeComplex* cx = nullptr;
    std::vector<std::tuple<int, int, int>> basis;
    std::map<std::tuple<int, int, int>, int> index;

    explicit TotalSpace(const FreeComplex& c);
    int dim() const { return static_cast<int>(basis.size()); }
    int degree_of(int idx) const {
        auto [k, l, i] = basis[idx];
        return cx->A->basis[k].bd.total() + l;
    }
};

// Sparse exact operator on a TotalSpace, with a total degree used by the
// graded commutator.
struct OperatorMatrix {
    int dim = 0;
    int deg = 0;
    std::map<int, std::map<int, Rational>> col;  // col[j][i] = entry (i,j)

    void add(int i, int j, const Rational& v);
    bool is_zero() const { return col.empty(); }
    friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
        return a.dim == b.dim && a.col == b.col;
    }
    OperatorMatrix& operator+=(const OperatorMatrix& o);
    OperatorMatrix& operator-=(const OperatorMatrix& o);
    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
};

OperatorMatrix op_compose(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix op_commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Faithful model of a HomForm as a module operator: columns are act() on the
// flattened basis.
OperatorMatrix to_operator(const TotalSpace& ts, const HomForm& h);

// Operators that are not module-linear: the two base differentials extended
// over holomorphic generators.
OperatorMatrix delbar_op(const TotalSpace& ts);
OperatorMatrix partial_op(const TotalSpace& ts);

// Composition performed on the operator side; the oracle for compose().
OperatorMatrix oracle_compose(const TotalSpace& ts, const HomForm& a, const HomForm& b);

}  // namespace atlift
