#pragma once

#include "atlift/connection.hpp"
#include "atlift/homcomplex.hpp"
#include "atlift/rng.hpp"

namespace atlift {

// Rank profiles are anchored at degree zero: {1,2,1} means ranks 1,2,1 in
// degrees -2,-1,0.
std::vector<std::vector<int>> standard_profiles();

// Complex with the given profile and a random square-zero differential whose
// entries are rational multiples of the unit.
FreeComplex random_complex(const BGA& A, const std::vector<int>& profile, Rng& rng);

// Random entries over the (1,0) part of the base.
Connection random_connection(const FreeComplex& cx, Rng& rng);

// Homogeneous element of the endomorphism algebra with antiholomorphic
// coefficients only (holomorphic degree zero), of the given total degree.
HomForm random_homform_p0(const FreeComplex& cx, int degree, Rng& rng);

std::vector<HKey> dgla_basis_keys(const FreeComplex& cx);
std::vector<HKey> dgla_basis_keys_degree(const FreeComplex& cx, int degree);

}  // namespace atlift
