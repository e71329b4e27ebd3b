#include "atlift/deformation.hpp"

#include <algorithm>
#include <cassert>

namespace atlift {

std::string Multi::str() const {
    std::string out;
    auto piece = [&](const char* name, int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (e > 1) out += "^" + std::to_string(e);
    };
    piece("t1", a);
    piece("t2", b);
    return out.empty() ? "1" : out;
}

ArtinCoefficients::ArtinCoefficients(int v, int n) : vars(v), order(n) {
    assert(v >= 1 && v <= 2 && n >= 1 && n <= 8);
    for (int total = 1; total <= n; ++total)
        for (int a = total; a >= 0; --a) {
            int b = total - a;
            if (vars == 1 && b > 0) continue;
            mons.push_back({a, b});
        }
    std::sort(mons.begin(), mons.end(), [](const Multi& x, const Multi& y) {
        return std::tuple(x.total(), -x.a) < std::tuple(y.total(), -y.a);
    });
}

std::map<Multi, HomForm> mc_residual(const MCElement& x) {
    std::map<Multi, HomForm> out;
    for (const Multi& m : x.R.mons) {
        HomForm r;
        if (const HomForm* xm = x.component(m)) r = hom_d(*xm);
        for (const auto& [b1, f1] : x.comp)
            for (const auto& [b2, f2] : x.comp) {
                Multi sum = b1 + b2;
                if (!(sum == m)) continue;
                r += Rational(1, 2) * bracket(f1, f2);
            }
        if (!r.is_zero()) out.emplace(m, std::move(r));
    }
    return out;
}

bool CohomologyBasis::is_cocycle(const std::vector<Rational>& v) const {
    assert(static_cast<int>(v.size()) == space_dim);
    for (int i = 0; i < cocycle_m.r; ++i) {
        Rational acc(0);
        for (int j = 0; j < space_dim; ++j)
            if (!is_zero(v[j])) acc += cocycle_m.at(i, j) * v[j];
        if (!is_zero(acc)) return false;
    }
    return true;
}

bool CohomologyBasis::class_is_zero(const std::vector<Rational>& v) const {
    return solve(boundary_m, v).has_value();
}

std::optional<std::vector<Rational>> CohomologyBasis::class_coords(
    const std::vector<Rational>& v) const {
    if (!is_cocycle(v)) return std::nullopt;
    RatMat aug(space_dim, boundary_m.c + dim());
    for (int i = 0; i < space_dim; ++i) {
        for (int j = 0; j < boundary_m.c; ++j) aug.at(i, j) = boundary_m.at(i, j);
        for (int j = 0; j < dim(); ++j) aug.at(i, boundary_m.c + j) = reps[j][i];
    }
    auto sol = solve(aug, v);
    assert(sol.has_value());
    std::vector<Rational> out(dim());
    for (int j = 0; j < dim(); ++j) out[j] = (*sol)[boundary_m.c + j];
    return out;
}

CohomologyBasis cohomology(const DGLAPresentation& pres, int degree) {
    CohomologyBasis H;
    H.degree = degree;
    H.space_dim = static_cast<int>(pres.slice(degree).size());
    H.cocycle_m = pres.d_matrix(degree);
    H.boundary_m = pres.d_matrix(degree - 1);

    std::vector<std::vector<Rational>> kernel = kernel_basis(H.cocycle_m);
    RatMat chosen(H.space_dim, H.boundary_m.c);
    for (int i = 0; i < H.space_dim; ++i)
        for (int j = 0; j < H.boundary_m.c; ++j) chosen.at(i, j) = H.boundary_m.at(i, j);
    int base_rank = rank(chosen);
    for (const auto& z : kernel) {
        RatMat widened(H.space_dim, chosen.c + 1);
        for (int i = 0; i < H.space_dim; ++i) {
            for (int j = 0; j < chosen.c; ++j) widened.at(i, j) = chosen.at(i, j);
            widened.at(i, chosen.c) = z[i];
        }
        if (rank(widened) > base_rank) {
            H.reps.push_back(z);
            chosen = std::move(widened);
            ++base_rank;
        }
    }
    return H;
}

HomForm from_coords(const DGLAPresentation& pres, int degree, const std::vector<Rational>& v) {
    const std::vector<int>& sl = pres.slice(degree);
    HomForm out(*pres.cx);
    for (size_t i = 0; i < sl.size(); ++i) {
        if (is_zero(v[i])) continue;
        const DGLABasisElt& e = pres.elts[sl[i]];
        out.add_term(e.key, v[i] * RatMat::unit(pres.cx->rank(e.key.l + e.key.n),
                                                pres.cx->rank(e.key.l), e.i, e.j));
    }
    return out;
}

ExtendResult extend_order(const DGLAPresentation& pres, MCElement& x, int to_order) {
    for (int m = 1; m <= to_order; ++m) {
        for (const Multi& mon : x.R.mons) {
            if (mon.total() != m) continue;
            HomForm forced;
            for (const auto& [b1, f1] : x.comp)
                for (const auto& [b2, f2] : x.comp)
                    if (b1 + b2 == mon) forced += Rational(1, 2) * bracket(f1, f2);
            HomForm already;
            if (const HomForm* cur = x.component(mon)) already = hom_d(*cur);
            HomForm need = forced + already;
            if (need.is_zero()) continue;
            // Solve d(correction) = -need and absorb it into the component.
            std::vector<Rational> rhs = pres.coords(need, 2);
            for (auto& v : rhs) v = -v;
            auto sol = solve(pres.d_matrix(1), rhs);
            if (!sol) return {false, mon};
            HomForm corr = from_coords(pres, 1, *sol);
            auto it = x.comp.find(mon);
            if (it == x.comp.end())
                x.comp.emplace(mon, corr);
            else {
                it->second += corr;
                if (it->second.is_zero()) x.comp.erase(it);
            }
        }
    }
    return {true, {}};
}

std::vector<int> target_slice(const BGA& A, int shifted_degree) {
    return TruncatedTarget(A).basis_in_degree(shifted_degree);
}

std::vector<Rational> target_coords(const BGA& A, const BGAElement& x, int shifted_degree) {
    std::vector<int> sl = target_slice(A, shifted_degree);
    std::vector<Rational> out(sl.size(), Rational(0));
    for (const auto& [k, v] : x.c) {
        auto it = std::find(sl.begin(), sl.end(), k);
        assert(it != sl.end());
        out[static_cast<size_t>(it - sl.begin())] = v;
    }
    return out;
}

RatMat target_d_matrix(const BGA& A, int shifted_degree) {
    TruncatedTarget tt(A);
    std::vector<int> from = tt.basis_in_degree(shifted_degree);
    std::vector<int> to = tt.basis_in_degree(shifted_degree + 1);
    RatMat m(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (size_t j = 0; j < from.size(); ++j) {
        BGAElement img = tt.truncated_d(BGAElement::single(from[j]));
        for (const auto& [k, v] : img.c) {
            auto it = std::find(to.begin(), to.end(), k);
            assert(it != to.end());
            m.at(static_cast<int>(it - to.begin()), static_cast<int>(j)) = v;
        }
    }
    return m;
}

std::optional<BGAElement> target_primitive(const BGA& A, const BGAElement& x, int shifted_degree) {
    std::vector<Rational> rhs = target_coords(A, x, shifted_degree);
    auto sol = solve(target_d_matrix(A, shifted_degree - 1), rhs);
    if (!sol) return std::nullopt;
    std::vector<int> from = target_slice(A, shifted_degree - 1);
    BGAElement out;
    for (size_t j = 0; j < from.size(); ++j) out.add(from[j], (*sol)[j]);
    return out;
}

namespace {

// One annihilation check: w must be hit by the truncated differential, both by
// the explicit primitive and by an independent solve.
std::string check_exact(const BGA& A, const BGAElement& w, const BGAElement& primitive) {
    TruncatedTarget tt(A);
    if (!(tt.truncated_d(primitive) == w)) return "explicit primitive does not bound the image";
    if (!target_primitive(A, w, 2).has_value()) return "no primitive found by linear solve";
    return {};
}

}  // namespace

ObstructionStats check_obstruction_annihilation(const LInftyMorphism& m,
                                                const DGLAPresentation& pres, Rng& rng,
                                                int trials) {
    ObstructionStats st;
    st.trials = trials;
    const BGA& A = *pres.cx->A;
    CohomologyBasis H2 = cohomology(pres, 2);
    std::vector<std::vector<Rational>> Z1 = kernel_basis(pres.d_matrix(1));

    for (int trial = 0; trial < trials; ++trial) {
        Rng local = rng.fork("mc-trial-" + std::to_string(trial));
        if (Z1.empty()) break;
        std::vector<Rational> v(pres.slice(1).size(), Rational(0));
        for (const auto& z : Z1) {
            Rational w = local.rational(2, 1);
            if (is_zero(w)) continue;
            for (size_t i = 0; i < v.size(); ++i) v[i] += w * z[i];
        }
        HomForm x1 = from_coords(pres, 1, v);
        if (x1.is_zero()) continue;
        assert(hom_d(x1).is_zero());

        HomForm r2 = Rational(1, 2) * bracket(x1, x1);
        std::vector<Rational> r2c = pres.coords(r2, 2);
        if (!H2.is_cocycle(r2c)) {
            st.violations.push_back({"mc-internal", "order-2 residual is not a cocycle"});
            continue;
        }
        if (!H2.class_is_zero(r2c)) {
            ++st.order2_nonzero;
            BGAElement w = m.g1(r2);
            BGAElement viatau = tau(m.u, 1, r2);
            if (!(is_zero(m.F.a + 1) && is_zero(m.F.b)) || w == viatau) {
                BGAElement primitive = Rational(1, 2) * m.g2(x1, x1);
                std::string err = check_exact(A, w, primitive);
                if (err.empty())
                    ++st.annihilated;
                else
                    st.violations.push_back({"obstruction-order2", err});
            } else {
                st.violations.push_back({"obstruction-order2", "first component disagrees with tau"});
            }
            continue;
        }

        // Flat to order 2: absorb and examine order 3.
        ++st.order3_examined;
        std::vector<Rational> rhs = r2c;
        for (auto& t : rhs) t = -t;
        auto sol = solve(pres.d_matrix(1), rhs);
        assert(sol.has_value());
        HomForm x2 = from_coords(pres, 1, *sol);
        HomForm r3 = bracket(x1, x2);
        if (r3.is_zero()) {
            ++st.extended;
            continue;
        }
        std::vector<Rational> r3c = pres.coords(r3, 2);
        if (!H2.is_cocycle(r3c)) {
            st.violations.push_back({"mc-internal", "order-3 residual is not a cocycle"});
            continue;
        }
        if (!H2.class_is_zero(r3c)) {
            ++st.order3_nonzero;
            BGAElement w = m.g1(r3);
            BGAElement primitive = m.g2(x1, x2) + Rational(1, 6) * m.g3(x1, x1, x1);
            std::string err = check_exact(A, w, primitive);
            if (err.empty())
                ++st.annihilated;
            else
                st.violations.push_back({"obstruction-order3", err});
        } else {
            ++st.extended;
        }
    }
    return st;
}

std::map<Multi, BGAElement> pushforward_mc(const LInftyMorphism& m, const MCElement& x,
                                           const Rational& c2, const Rational& c3) {
    assert(mc_residual(x).empty() && "pushforward requires a Maurer-Cartan element");
    std::map<Multi, BGAElement> out;
    auto put = [&](const Multi& mon, const BGAElement& e) {
        if (e.is_zero()) return;
        out[mon] += e;
        if (out[mon].is_zero()) out.erase(mon);
    };
    for (const auto& [b1, f1] : x.comp) put(b1, m.g1(*x.component(b1)));
    for (const auto& [b1, f1] : x.comp)
        for (const auto& [b2, f2] : x.comp) {
            Multi mon = b1 + b2;
            if (!x.R.in_range(mon)) continue;
            put(mon, c2 * m.g2(f1, f2));
        }
    for (const auto& [b1, f1] : x.comp)
        for (const auto& [b2, f2] : x.comp)
            for (const auto& [b3, f3] : x.comp) {
                Multi mon = b1 + b2 + b3;
                if (!x.R.in_range(mon)) continue;
                put(mon, c3 * m.g3(f1, f2, f3));
            }
    return out;
}

std::vector<Multi> pushforward_closedness_failures(const LInftyMorphism& m, const MCElement& x,
                                                   const Rational& c2, const Rational& c3) {
    TruncatedTarget tt(*m.cx->A);
    std::vector<Multi> bad;
    for (const auto& [mon, val] : pushforward_mc(m, x, c2, c3))
        if (!tt.truncated_d(val).is_zero()) bad.push_back(mon);
    return bad;
}

std::vector<std::pair<Rational, Rational>> derive_pushforward_constants(
    const LInftyMorphism& m, const std::vector<MCElement>& instances) {
    std::vector<std::pair<Rational, Rational>> ok;
    for (int s2 : {1, -1})
        for (int s3 : {1, -1}) {
            Rational c2 = Rational(s2, 2), c3 = Rational(s3, 6);
            bool closed = true;
            for (const MCElement& x : instances)
                if (!pushforward_closedness_failures(m, x, c2, c3).empty()) {
                    closed = false;
                    break;
                }
            if (closed) ok.emplace_back(c2, c3);
        }
    return ok;
}

}  // namespace atlift
