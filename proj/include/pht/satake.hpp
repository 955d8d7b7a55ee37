#pragma once

#include "pht/cocycle.hpp"
#include "pht/coefficients.hpp"
#include "pht/rational.hpp"

#include <map>
#include <vector>

namespace pht {

// Finitely supported element of the spherical algebra in the double-coset
// indicator basis psi_lambda, lambda antidominant. Coefficients are exact
// Scalars so renormalized variants stay symbolic in q and pi.
struct SphericalElt {
  std::map<IntVec, Scalar> coeffs;

  void validate(const RootDatum& datum) const;  // antidominant support only

  SphericalElt operator+(const SphericalElt& o) const;
  SphericalElt scaled(const Scalar& c) const;
  bool operator==(const SphericalElt& o) const { return coeffs == o.coeffs; }
  bool operator!=(const SphericalElt& o) const { return !(*this == o); }
};

// Renormalized spherical transform into the lattice group ring:
//   psi_mu |-> sum over antidominant lambda <= mu of
//              pi^{<xi,lambda>} c(lambda, mu) sigma_lambda,
// expanded through the symmetrized basis vectors sigma_lambda of spec (the
// spec's variant must be the xi-plus-modulus twist). Throws
// std::runtime_error when a needed coefficient is missing from `coeffs`.
GroupRingElt satake_transform(const SphericalElt& h, const CocycleSpec& spec,
                              const CoefficientSource& coeffs);

// Coordinates of a twisted-invariant element in the sigma basis, read off at
// the antidominant points of its support. Throws std::invalid_argument when
// x is not a finite combination of sigma's.
std::map<IntVec, Scalar> sigma_coordinates(const GroupRingElt& x,
                                           const CocycleSpec& spec);

// Exact triangular inversion of the transform. The result r satisfies
// satake_transform(r) == x; throws std::invalid_argument when x is not in
// the image (support not a lower set, non-invariant, or non-divisible
// coordinates).
SphericalElt satake_inverse(const GroupRingElt& x, const CocycleSpec& spec,
                            const CoefficientSource& coeffs);

// Values of the normalized symmetric generators on a dual-torus point for
// GL(n) with xi = (a_1 <= ... <= a_n):
//   i-th value = q^{-i(i-1)/2} pi^{-(a_1+...+a_i)} e_i(zeta),
// e_i the elementary symmetric polynomial. Throws std::invalid_argument for
// non-GL data or mismatched sizes.
std::vector<Scalar> gl_symmetric_map(const QVec& zeta, const QVec& xi,
                                     const RootDatumPtr& datum);

}  // namespace pht
