#include "atlift/connection.hpp"

#include <cassert>

#include "atlift/sweep.hpp"

namespace atlift {

HomForm Connection::gamma_form() const {
    HomForm out(*cx);
    for (const auto& [l, rows] : gamma) {
        int r = cx->rank(l);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (const auto& [k, v] : rows[i][j].c) {
                    RatMat m(r, r);
                    m.at(i, j) = v;
                    out.add_term({k, l, 0}, m);
                }
    }
    return out;
}

std::vector<Violation> validate_connection(const Connection& conn) {
    std::vector<Violation> out;
    const FreeComplex& cx = *conn.cx;
    for (const auto& [l, r] : cx.ranks) {
        auto it = conn.gamma.find(l);
        if (it == conn.gamma.end()) {
            out.push_back({"connection-shape", "no block at degree " + std::to_string(l)});
            continue;
        }
        if (static_cast<int>(it->second.size()) != r) {
            out.push_back({"connection-shape", "bad row count at degree " + std::to_string(l)});
            continue;
        }
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(it->second[i].size()) != r) {
                out.push_back({"connection-shape", "bad column count at degree " + std::to_string(l)});
                break;
            }
            for (int j = 0; j < r; ++j)
                for (const auto& [k, v] : it->second[i][j].c)
                    if (!(cx.A->basis[k].bd == Bidegree{1, 0}))
                        out.push_back({"connection-bidegree",
                                       "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") at degree " + std::to_string(l) + " not of type (1,0)"});
        }
    }
    return out;
}

HomForm nabla(const Connection& conn, const HomForm& h) {
    return partial_coeffs(h) + bracket(conn.gamma_form(), h);
}

HomForm atiyah_cocycle(const Connection& conn) {
    HomForm g = conn.gamma_form();
    HomForm d = delta_form(*conn.cx);
    return delbar(g) + partial_coeffs(d) + bracket(g, d);
}

BGAElement pair(const CyclicForm& F, const HomForm& h1, const HomForm& h2) {
    const BGA& A = *h1.cx->A;
    BGAElement out;
    if (!is_zero(F.a)) out += F.a * supertrace(compose(h1, h2));
    if (!is_zero(F.b)) out += F.b * A.mul(supertrace(h1), supertrace(h2));
    return out;
}

std::string check_compatibility(const Connection& conn, const CyclicForm& F, const HomForm& h1,
                                const HomForm& h2) {
    const BGA& A = *conn.cx->A;
    BGAElement lhs = A.apply_partial(pair(F, h1, h2));
    int sign = h1.degree().value_or(0) & 1 ? -1 : 1;
    BGAElement rhs = pair(F, nabla(conn, h1), h2) + Rational(sign) * pair(F, h1, nabla(conn, h2));
    if (lhs == rhs) return {};
    return "pairing not compatible: d1<h1,h2> = " + A.elt_str(lhs) + " but <D h1,h2> +- <h1,D h2> = " +
           A.elt_str(rhs);
}

OperatorMatrix connection_10_op(const TotalSpace& ts, const Connection& conn) {
    OperatorMatrix out = partial_op(ts);
    out += to_operator(ts, conn.gamma_form());
    out.deg = 1;
    return out;
}

OperatorMatrix connection_op(const TotalSpace& ts, const Connection& conn) {
    OperatorMatrix out = connection_10_op(ts, conn);
    out += delbar_op(ts);
    return out;
}

std::vector<Violation> verify_connection_identities(const Connection& conn,
                                                    const Connection& other) {
    const FreeComplex& cx = *conn.cx;
    const BGA& A = *cx.A;
    std::vector<Violation> out;

    HomForm u = atiyah_cocycle(conn);

    // Slot check: every term of u is either a (1,1)-coefficient with shift 0
    // or a (1,0)-coefficient with shift 1.
    for (const auto& [key, m] : u.t) {
        Bidegree bd = A.basis[key.k].bd;
        bool ok = (bd == Bidegree{1, 1} && key.n == 0) || (bd == Bidegree{1, 0} && key.n == 1);
        if (!ok)
            out.push_back({"cocycle-slots", "unexpected term at coefficient " + A.basis[key.k].name +
                                                " shift " + std::to_string(key.n)});
    }

    if (!hom_d(u).is_zero()) out.push_back({"cocycle-closed", "endomorphism differential of the cocycle is nonzero"});

    {
        HomForm a = other.gamma_form() - conn.gamma_form();
        HomForm diff = atiyah_cocycle(other) - u;
        if (!(diff == hom_d(a)))
            out.push_back({"cocycle-difference",
                           "cocycle difference of two connections is not the differential of the "
                           "difference form"});
    }

    // Basis endomorphism forms of the full bigraded type.
    std::vector<std::tuple<HKey, int, int>> items;
    for (int k = 0; k < A.dim(); ++k)
        for (const auto& [l, rl] : cx.ranks)
            for (const auto& [l2, rl2] : cx.ranks)
                for (int i = 0; i < rl2; ++i)
                    for (int j = 0; j < rl; ++j) items.emplace_back(HKey{k, l, l2 - l}, i, j);

    auto hits = sweep(static_cast<std::int64_t>(items.size()), [&](std::int64_t t) -> std::string {
        auto [key, i, j] = items[t];
        HomForm h = basis_homform(cx, key, i, j);
        std::string what;

        HomForm lhs = hom_d(nabla(conn, h)) + nabla(conn, hom_d(h));
        if (!(lhs == bracket(u, h))) what += "[commutator-vs-cocycle]";

        HomForm u11;
        u11.cx = &cx;
        for (const auto& [uk, um] : u.t)
            if (uk.n == 0) u11.add_term(uk, um);
        HomForm mixed = nabla(conn, delbar(h)) + delbar(nabla(conn, h));
        if (!(mixed == bracket(u11, h))) what += "[mixed-second-derivative]";

        BGAElement full = supertrace(nabla(conn, h) + delbar(h));
        if (!(full == A.apply_d(supertrace(h)))) what += "[trace-full-connection]";

        if (!(supertrace(nabla(conn, h)) == A.apply_partial(supertrace(h)))) what += "[trace-nabla]";

        return what;
    });
    for (auto& h : hits)
        out.push_back({"identity-sweep", h.what + " at item " + std::to_string(h.index)});

    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace atlift
