#pragma once

#include "atlift/linfty.hpp"

namespace atlift {

// Monomial exponent in at most two nilpotent variables.
struct Multi {
    int a = 0;
    int b = 0;

    int total() const { return a + b; }
    friend auto operator<=>(const Multi&, const Multi&) = default;
    friend Multi operator+(Multi x, Multi y) { return {x.a + y.a, x.b + y.b}; }
    std::string str() const;
};

// Polynomial ring in `vars` variables modulo the (order+1)-st power of the
// maximal ideal; only the ideal part is stored (monomials of total degree
// between 1 and order).
struct ArtinCoefficients {
    int vars = 1;
    int order = 2;
    std::vector<Multi> mons;

    ArtinCoefficients(int v, int n);
    bool in_range(const Multi& m) const { return m.total() >= 1 && m.total() <= order; }
};

// Degree-one element of the endomorphism algebra with coefficients in the
// ideal of an Artin ring.
struct MCElement {
    ArtinCoefficients R;
    std::map<Multi, HomForm> comp;

    explicit MCElement(const ArtinCoefficients& r) : R(r) {}
    const HomForm* component(const Multi& m) const {
        auto it = comp.find(m);
        return it == comp.end() ? nullptr : &it->second;
    }
};

// Differential plus half-bracket, per monomial; zero map means the deformation
// equation holds to the stored order.
std::map<Multi, HomForm> mc_residual(const MCElement& x);

// Quotient of kernel by image for one degree slice of the endomorphism
// complex; all queries take slice coordinates.
struct CohomologyBasis {
    int degree = 0;
    int space_dim = 0;
    RatMat cocycle_m;   // differential out of the slice
    RatMat boundary_m;  // differential into the slice
    std::vector<std::vector<Rational>> reps;

    int dim() const { return static_cast<int>(reps.size()); }
    bool is_cocycle(const std::vector<Rational>& v) const;
    bool class_is_zero(const std::vector<Rational>& v) const;
    // Coefficients of the class in reps, or nullopt if v is not a cocycle.
    std::optional<std::vector<Rational>> class_coords(const std::vector<Rational>& v) const;
};

CohomologyBasis cohomology(const DGLAPresentation& pres, int degree);

// Element of the degree slice with the given coordinates.
HomForm from_coords(const DGLAPresentation& pres, int degree, const std::vector<Rational>& v);

// Extends x in place so the deformation equation holds through to_order;
// stops at the first monomial whose obstruction class is nonzero.
struct ExtendResult {
    bool ok = true;
    Multi failed_at;
};
ExtendResult extend_order(const DGLAPresentation& pres, MCElement& x, int to_order);

// Degree slices of the truncated quotient target.
std::vector<int> target_slice(const BGA& A, int shifted_degree);
std::vector<Rational> target_coords(const BGA& A, const BGAElement& x, int shifted_degree);
RatMat target_d_matrix(const BGA& A, int shifted_degree);
// A primitive for x under the truncated differential, if one exists.
std::optional<BGAElement> target_primitive(const BGA& A, const BGAElement& x, int shifted_degree);

struct ObstructionStats {
    int trials = 0;
    int order2_nonzero = 0;
    int order3_examined = 0;
    int order3_nonzero = 0;
    int annihilated = 0;
    int extended = 0;
    std::vector<Violation> violations;
};

// Seeded first-order starts; every nonzero obstruction class at orders two and
// three must have its image under the first semiregularity component exhibited
// as an exact boundary of the truncated target, via the explicit primitives
// from the morphism components and an independent linear solve.
ObstructionStats check_obstruction_annihilation(const LInftyMorphism& m,
                                                const DGLAPresentation& pres, Rng& rng, int trials);

// y = c1 g1(x) + c2 g2(x,x) + c3 g3(x,x,x) per monomial, c1 = 1.
std::map<Multi, BGAElement> pushforward_mc(const LInftyMorphism& m, const MCElement& x,
                                           const Rational& c2, const Rational& c3);

// Monomials where the pushforward fails to be closed; empty means closed.
std::vector<Multi> pushforward_closedness_failures(const LInftyMorphism& m, const MCElement& x,
                                                   const Rational& c2, const Rational& c3);

// Tries the four sign patterns (+-1/2, +-1/6) on the given deformation
// instances; returns the patterns that are closed on all of them.
std::vector<std::pair<Rational, Rational>> derive_pushforward_constants(
    const LInftyMorphism& m, const std::vector<MCElement>& instances);

}  // namespace atlift
