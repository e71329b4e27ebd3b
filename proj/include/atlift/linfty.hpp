#pragma once

#include <cstdint>
#include <functional>

#include "atlift/connection.hpp"
#include "atlift/rng.hpp"

namespace atlift {

// Morphism with three nonzero components from the endomorphism algebra into
// the truncated base quotient, built from a connection and a cyclic pairing.
// Values are already truncated.
struct LInftyMorphism {
    const FreeComplex* cx = nullptr;
    Connection conn;
    CyclicForm F;
    HomForm u;

    BGAElement g1(const HomForm& f) const;
    BGAElement g2(const HomForm& f, const HomForm& g) const;
    BGAElement g3(const HomForm& f, const HomForm& g, const HomForm& h) const;
    // Dispatch by arity; identically zero for four or more arguments.
    BGAElement gn(const std::vector<const HomForm*>& vs) const;
};

LInftyMorphism build_g(const FreeComplex& cx, const Connection& conn, const CyclicForm& F);

// Indexed basis of the endomorphism algebra with antiholomorphic coefficients,
// sliced by total degree, with the differential as exact matrices.
struct DGLABasisElt {
    HKey key;
    int i = 0;
    int j = 0;
};

struct DGLAPresentation {
    const FreeComplex* cx = nullptr;
    std::vector<DGLABasisElt> elts;
    std::map<int, std::vector<int>> by_degree;

    explicit DGLAPresentation(const FreeComplex& c);

    int dim() const { return static_cast<int>(elts.size()); }
    int degree(int idx) const;
    HomForm form(int idx) const;

    const std::vector<int>& slice(int d) const;
    // Coordinates of a homogeneous antiholomorphic form in the degree-d slice.
    std::vector<Rational> coords(const HomForm& h, int d) const;
    // Matrix of the endomorphism differential from slice d to slice d+1.
    RatMat d_matrix(int d) const;
};

// Component evaluator interface so checkers run both on the real morphism and
// on perturbed data.
struct GComponents {
    std::function<BGAElement(const std::vector<const HomForm*>&)> eval;
};

GComponents components_of(const LInftyMorphism& m);

struct ConditionStats {
    int n = 0;
    std::int64_t tuples = 0;
    bool exhaustive = false;
    std::int64_t failures = 0;
    std::vector<Violation> sample_violations;  // capped detail
};

struct ConditionOptions {
    int max_n = 5;
    int exhaustive_dim_cap = 40;
    std::int64_t sample_budget = 500;
    int violation_detail_cap = 10;
};

// Morphism conditions into an abelian target in displayed form: the
// differential of g_n against the one-shuffle sum over g_n of the
// differential and the two-shuffle sum over g_{n-1} of the bracket.
// Implemented with precomputed differential/bracket tables.
std::vector<ConditionStats> check_abelian_conditions(const GComponents& g,
                                                     const DGLAPresentation& pres, int max_n,
                                                     Rng& rng, const ConditionOptions& opt = {});

// The same conditions assembled independently, term by term per tuple, from
// the general morphism equation; on the quotient target the bracket is zero,
// so its quadratic double sum drops out and the two checkers must agree.
std::vector<ConditionStats> check_general_conditions(const GComponents& g,
                                                     const DGLAPresentation& pres, int max_n,
                                                     Rng& rng, const ConditionOptions& opt = {});

// Component evaluator for a morphism between two presented DG-Lie algebras,
// valued in the target algebra, whose bracket need not vanish.
struct PresentedComponents {
    std::function<HomForm(const std::vector<const HomForm*>&)> eval;
};

// General morphism equation between presented DG-Lie algebras, including the
// quadratic double sum over brackets of component outputs with sign
// (-1)^((1-n+p)(|head|-p)) and weight 1/2.
std::vector<ConditionStats> check_general_conditions(const DGLAPresentation& V,
                                                     const DGLAPresentation& L,
                                                     const PresentedComponents& g, int max_n,
                                                     Rng& rng, const ConditionOptions& opt = {});

// Residuals of a single tuple, for property tests.
BGAElement abelian_residual(const GComponents& g, const std::vector<const HomForm*>& vs);
BGAElement general_residual(const GComponents& g, const std::vector<const HomForm*>& vs);
HomForm general_residual(const DGLAPresentation& V, const DGLAPresentation& L,
                         const PresentedComponents& g, const std::vector<const HomForm*>& vs);

// Semiregularity component: scaled supertrace against the p-th power of the
// cocycle, holomorphic degrees above p discarded.
BGAElement tau(const HomForm& u, int p, const HomForm& f);

// Scaled supertrace of the p-th power of the negated cocycle; closed for the
// total base differential.
BGAElement chern_cocycle(const HomForm& u, int p);

Rational factorial(int n);

}  // namespace atlift
