#include "atlift/bga.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "atlift/sweep.hpp"

namespace atlift {

BGAElement BGA::mul(const BGAElement& x, const BGAElement& y) const {
    BGAElement out;
    for (const auto& [i, ci] : x.c)
        for (const auto& [j, cj] : y.c) {
            const BGAElement& p = prod(i, j);
            Rational s = ci * cj;
            for (const auto& [k, ck] : p.c) out.add(k, s * ck);
        }
    return out;
}

static BGAElement apply_table(const std::vector<BGAElement>& table, const BGAElement& x) {
    BGAElement out;
    for (const auto& [i, ci] : x.c)
        for (const auto& [k, ck] : table[i].c) out.add(k, ci * ck);
    return out;
}

BGAElement BGA::apply_partial(const BGAElement& x) const { return apply_table(partial_table, x); }
BGAElement BGA::apply_delbar(const BGAElement& x) const { return apply_table(delbar_table, x); }

std::optional<Bidegree> BGA::bidegree_of(const BGAElement& x) const {
    if (x.is_zero()) return std::nullopt;
    Bidegree bd = basis[x.c.begin()->first].bd;
    for (const auto& [k, v] : x.c)
        if (!(basis[k].bd == bd)) return std::nullopt;
    return bd;
}

std::string BGA::elt_str(const BGAElement& x) const {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [k, v] : x.c) {
        Rational av = v < 0 ? Rational(-v) : v;
        if (out.empty()) {
            if (v < 0) out += "-";
        } else {
            out += v < 0 ? " - " : " + ";
        }
        if (av != 1 || k == unit) {
            out += rat_str(av);
            if (k != unit) out += "*";
        }
        if (k != unit) out += basis[k].name;
    }
    return out;
}

namespace {

struct Checker {
    const BGA& A;
    std::vector<Violation> out;

    void hit(std::string code, std::string detail) {
        out.push_back({std::move(code), std::move(detail)});
    }

    // Every term of x must sit in bidegree want.
    void expect_bidegree(const char* code, const BGAElement& x, Bidegree want, const std::string& where) {
        for (const auto& [k, v] : x.c)
            if (!(A.basis[k].bd == want))
                hit(code, where + ": term " + A.basis[k].name + " has bidegree (" +
                              std::to_string(A.basis[k].bd.p) + "," + std::to_string(A.basis[k].bd.q) +
                              "), expected (" + std::to_string(want.p) + "," + std::to_string(want.q) + ")");
    }
};

}  // namespace

std::vector<Violation> validate(const BGA& A) {
    std::vector<Violation> out;
    int d = A.dim();
    if (d == 0) {
        out.push_back({"structure", "empty basis"});
        return out;
    }
    if (A.unit < 0 || A.unit >= d) {
        out.push_back({"structure", "unit index out of range"});
        return out;
    }
    if (A.product_table.size() != static_cast<size_t>(d) * d ||
        A.partial_table.size() != static_cast<size_t>(d) ||
        A.delbar_table.size() != static_cast<size_t>(d)) {
        out.push_back({"structure", "table sizes do not match basis size"});
        return out;
    }
    {
        std::set<std::string> names;
        for (const auto& b : A.basis) {
            if (b.name.empty()) out.push_back({"structure", "empty basis name"});
            if (!names.insert(b.name).second)
                out.push_back({"structure", "duplicate basis name " + b.name});
        }
        if (!out.empty()) return out;
    }

    Checker ck{A, {}};

    if (!(A.basis[A.unit].bd == Bidegree{0, 0}))
        ck.hit("unit-bidegree", "unit " + A.basis[A.unit].name + " is not in bidegree (0,0)");

    for (int j = 0; j < d; ++j) {
        if (!(A.prod(A.unit, j) == BGAElement::single(j)))
            ck.hit("unit-law", "1*" + A.basis[j].name + " != " + A.basis[j].name);
        if (!(A.prod(j, A.unit) == BGAElement::single(j)))
            ck.hit("unit-law", A.basis[j].name + "*1 != " + A.basis[j].name);
    }

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            ck.expect_bidegree("product-bidegree", A.prod(i, j), A.basis[i].bd + A.basis[j].bd,
                               A.basis[i].name + "*" + A.basis[j].name);
    for (int i = 0; i < d; ++i) {
        ck.expect_bidegree("partial-bidegree", A.partial_table[i], A.basis[i].bd + Bidegree{1, 0},
                           "d1(" + A.basis[i].name + ")");
        ck.expect_bidegree("delbar-bidegree", A.delbar_table[i], A.basis[i].bd + Bidegree{0, 1},
                           "d2(" + A.basis[i].name + ")");
    }

    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            int sign = (A.basis[i].bd.total() & 1) && (A.basis[j].bd.total() & 1) ? -1 : 1;
            BGAElement want = Rational(sign) * A.prod(i, j);
            if (!(A.prod(j, i) == want))
                ck.hit("graded-commutativity",
                       A.basis[j].name + "*" + A.basis[i].name + " = " + A.elt_str(A.prod(j, i)) +
                           ", expected " + A.elt_str(want));
        }

    // Associativity over all triples; this is the heavy sweep.
    {
        std::int64_t total = static_cast<std::int64_t>(d) * d * d;
        auto hits = sweep(total, [&](std::int64_t t) -> std::string {
            int k = static_cast<int>(t % d);
            int j = static_cast<int>((t / d) % d);
            int i = static_cast<int>(t / (static_cast<std::int64_t>(d) * d));
            BGAElement lhs = A.mul(A.prod(i, j), BGAElement::single(k));
            BGAElement rhs = A.mul(BGAElement::single(i), A.prod(j, k));
            if (lhs == rhs) return {};
            return "(" + A.basis[i].name + "*" + A.basis[j].name + ")*" + A.basis[k].name +
                   " != " + A.basis[i].name + "*(" + A.basis[j].name + "*" + A.basis[k].name + ")";
        });
        for (auto& h : hits) ck.hit("associativity", std::move(h.what));
    }

    auto leibniz = [&](const char* code, const std::vector<BGAElement>& table) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                BGAElement lhs = apply_table(table, A.prod(i, j));
                BGAElement rhs = A.mul(table[i], BGAElement::single(j));
                int sign = (A.basis[i].bd.total() & 1) ? -1 : 1;
                rhs += Rational(sign) * A.mul(BGAElement::single(i), table[j]);
                if (!(lhs == rhs))
                    ck.hit(code, "fails on " + A.basis[i].name + "*" + A.basis[j].name);
            }
    };
    leibniz("partial-leibniz", A.partial_table);
    leibniz("delbar-leibniz", A.delbar_table);

    for (int i = 0; i < d; ++i) {
        if (!apply_table(A.partial_table, A.partial_table[i]).is_zero())
            ck.hit("partial-squared", "d1(d1(" + A.basis[i].name + ")) != 0");
        if (!apply_table(A.delbar_table, A.delbar_table[i]).is_zero())
            ck.hit("delbar-squared", "d2(d2(" + A.basis[i].name + ")) != 0");
        BGAElement mixed = apply_table(A.partial_table, A.delbar_table[i]);
        mixed += apply_table(A.delbar_table, A.partial_table[i]);
        if (!mixed.is_zero()) ck.hit("mixed-anticommute", "(d1 d2 + d2 d1)(" + A.basis[i].name + ") != 0");
    }

    std::sort(ck.out.begin(), ck.out.end());
    return ck.out;
}

BGA exterior_model(std::string name, const std::vector<GenSpec>& gens,
                   const std::map<int, BGAElement>& partial_on_gens,
                   const std::map<int, BGAElement>& delbar_on_gens) {
    int g = static_cast<int>(gens.size());
    assert(g <= 8);
    for (const auto& gen : gens) assert(gen.bd.total() % 2 != 0);
    int dim = 1 << g;

    BGA A;
    A.name = std::move(name);
    A.unit = 0;
    A.basis.resize(dim);
    for (int mask = 0; mask < dim; ++mask) {
        std::string nm;
        Bidegree bd{0, 0};
        for (int i = 0; i < g; ++i)
            if (mask & (1 << i)) {
                nm += gens[i].name;
                bd = bd + gens[i].bd;
            }
        A.basis[mask] = {mask == 0 ? "1" : nm, bd};
    }

    A.product_table.assign(static_cast<size_t>(dim) * dim, BGAElement{});
    for (int s = 0; s < dim; ++s)
        for (int t = 0; t < dim; ++t) {
            if (s & t) continue;  // repeated odd generator
            int flips = 0;
            for (int i = 0; i < g; ++i)
                if (s & (1 << i))
                    for (int j = 0; j < i; ++j)
                        if (t & (1 << j)) flips ^= 1;
            A.prod(s, t) = BGAElement::single(s | t, Rational(flips ? -1 : 1));
        }

    auto extend = [&](const std::map<int, BGAElement>& on_gens) {
        std::vector<BGAElement> table(dim);
        for (int mask = 0; mask < dim; ++mask) {
            BGAElement total;
            int pos = 0;
            for (int i = 0; i < g; ++i) {
                if (!(mask & (1 << i))) continue;
                auto it = on_gens.find(i);
                if (it != on_gens.end() && !it->second.is_zero()) {
                    int left = mask & ((1 << i) - 1);
                    int right = mask & ~((1 << i) - 1) & ~(1 << i);
                    BGAElement term = A.mul(BGAElement::single(left),
                                            A.mul(it->second, BGAElement::single(right)));
                    total += Rational(pos % 2 ? -1 : 1) * term;
                }
                ++pos;
            }
            table[mask] = std::move(total);
        }
        return table;
    };
    A.partial_table = extend(partial_on_gens);
    A.delbar_table = extend(delbar_on_gens);
    return A;
}

std::optional<BGA> canned_model(std::string_view name) {
    auto mask = [](std::initializer_list<int> gens) {
        int m = 0;
        for (int i : gens) m |= 1 << i;
        return m;
    };
    if (name == "point") {
        BGA A;
        A.name = "point";
        A.basis = {{"1", {0, 0}}};
        A.unit = 0;
        A.product_table = {BGAElement::single(0)};
        A.partial_table = {BGAElement{}};
        A.delbar_table = {BGAElement{}};
        return A;
    }
    if (name == "torus1")
        return exterior_model("torus1", {{"x", {1, 0}}, {"y", {0, 1}}}, {}, {});
    if (name == "torus2")
        return exterior_model("torus2",
                              {{"x1", {1, 0}}, {"x2", {1, 0}}, {"y1", {0, 1}}, {"y2", {0, 1}}}, {},
                              {});
    if (name == "delbar-toy")
        return exterior_model("delbar-toy", {{"x", {1, 0}}, {"y", {0, 1}}}, {},
                              {{0, BGAElement::single(mask({0, 1}))}});
    if (name == "iwasawa") {
        std::vector<GenSpec> gens = {{"x1", {1, 0}}, {"x2", {1, 0}}, {"x3", {1, 0}},
                                     {"y1", {0, 1}}, {"y2", {0, 1}}, {"y3", {0, 1}}};
        std::map<int, BGAElement> dp = {{2, BGAElement::single(mask({0, 1}), Rational(-1))}};
        std::map<int, BGAElement> db = {{5, BGAElement::single(mask({3, 4}), Rational(-1))}};
        return exterior_model("iwasawa", gens, dp, db);
    }
    return std::nullopt;
}

std::vector<std::string> canned_model_names() {
    return {"point", "torus1", "torus2", "delbar-toy", "iwasawa"};
}

}  // namespace atlift
