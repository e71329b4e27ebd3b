#pragma once

#include "atlift/homcomplex.hpp"

namespace atlift {

// Connection of type (1,0) on a free complex, stored as one square matrix of
// (1,0)-coefficients per module degree: the image of generator j at degree l
// is sum_i gamma[l][i][j] . e_i.
struct Connection {
    const FreeComplex* cx = nullptr;
    std::map<int, std::vector<std::vector<BGAElement>>> gamma;

    // Degree-one endomorphism form with shift zero.
    HomForm gamma_form() const;
};

std::vector<Violation> validate_connection(const Connection& conn);

// Covariant derivative in the holomorphic direction on endomorphism forms.
HomForm nabla(const Connection& conn, const HomForm& h);

// Curvature-style cocycle measuring the failure of the connection to respect
// the antiholomorphic structure: a (1,1)-form with shift 0 plus a (1,0)-form
// with shift 1.
HomForm atiyah_cocycle(const Connection& conn);

// Two-parameter family of invariant pairings built from the supertrace.
struct CyclicForm {
    Rational a = Rational(-1);
    Rational b = Rational(0);
};

// <h1, h2> = a str(h1 h2) + b str(h1) str(h2), valued in the base algebra.
BGAElement pair(const CyclicForm& F, const HomForm& h1, const HomForm& h2);

// d1<h1,h2> = <nabla h1, h2> + (-1)^|h1| <h1, nabla h2>; empty string on
// success, otherwise a description of the mismatch.
std::string check_compatibility(const Connection& conn, const CyclicForm& F, const HomForm& h1,
                                const HomForm& h2);

// Holomorphic part of the full connection operator on the total space.
OperatorMatrix connection_10_op(const TotalSpace& ts, const Connection& conn);
// Full connection operator: holomorphic part plus the antiholomorphic
// differential.
OperatorMatrix connection_op(const TotalSpace& ts, const Connection& conn);

// Identity suite for one configuration (complex, connection, optional second
// connection). Sweeps all basis endomorphism forms and checks:
//   - the commutator of the endomorphism differential with nabla is bracketing
//     with the cocycle;
//   - the (1,1) part of the cocycle controls the mixed second derivative;
//   - supertrace turns the full connection into the total base differential
//     and nabla into the holomorphic one;
//   - the cocycle is closed for the endomorphism differential;
//   - the cocycle has exactly the two expected (bidegree, shift) slots;
//   - the difference of the cocycles of two connections is the endomorphism
//     differential of the difference form.
std::vector<Violation> verify_connection_identities(const Connection& conn,
                                                    const Connection& other);

}  // namespace atlift
