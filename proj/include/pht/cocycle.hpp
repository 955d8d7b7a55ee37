#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pht/root_datum.hpp"
#include "pht/scalar.hpp"

namespace pht {

// Which scalar-valued 1-cocycle twists the Weyl action on the group algebra.
//   xi_only    : pi-power cocycle attached to the character xi.
//   delta_half : q-power cocycle attached to the half-sum of positive roots.
//   gamma_xi   : the product of the two (the default almost everywhere).
//   normalized : the gauge in which gamma_xi has been trivialized by the
//                coboundary pi^{xi(.)} q^{eta(.)}; the action is the plain
//                permutation action and all the twisting moves into the
//                weight function nu(lambda) = <s, lambda_antidom>.
enum class Variant { xi_only, delta_half, gamma_xi, normalized };

Variant variant_from_string(const std::string& s);  // throws invalid_argument
std::string variant_to_string(Variant v);

// How to decide membership of a vector in the closed domain attached to s.
//   hull       : convex-hull test over the Weyl orbit translates.
//   dominance  : dominant rearrangement compared with s in dominance order.
//   generators : finitely many linear inequalities from the orbit of the
//                antidominant-monoid generators.
//   all        : run all three and insist they agree (InternalCheckError
//                otherwise).
enum class Method { hull, dominance, generators, all };

Method method_from_string(const std::string& s);  // throws invalid_argument
std::string method_to_string(Method m);

// One face of the domain presentation: <v, lambda> >= bound, with `equality`
// set when the opposite face is also present so the pair pins a hyperplane.
struct DomainCondition {
  IntVec lambda;
  Rational bound;
  bool equality = false;
};

// A twisting datum: root datum, integral dominant character xi, field
// invariants, and the cocycle variant.
struct CocycleSpec {
  RootDatumPtr datum;
  QVec xi;  // integral entries, weakly increasing pairings (dominant)
  FieldInvariants field;
  Variant variant = Variant::gamma_xi;

  void validate() const;  // throws invalid_argument on bad data

  // s = xi + e*f*eta; the single vector controlling weights, norms and the
  // membership domain.
  QVec s_vector() const;
};

// Scalar cocycle value gamma(w, lambda) as a single monomial.
Monomial gamma(const CocycleSpec& spec, size_t w, const IntVec& lambda);

// gamma(w0(lambda), lambda) where w0(lambda) moves lambda to its antidominant
// representative; the canonical "leading" cocycle value at lambda.
Monomial gamma_dom(const CocycleSpec& spec, const IntVec& lambda);

// The weight exponent nu(lambda): val gamma_dom(lambda) for the cocycle
// variants, and <s, lambda_antidom> for the normalized variant.
Rational weight_exponent(const CocycleSpec& spec, const IntVec& lambda);

// The orbit points z_w entering the membership hull: z_w = s - w(s) for
// gamma_xi, z_w = w(s) for normalized. Only defined for those two variants.
// Indexed by Weyl element; z_{identity} is first.
std::vector<QVec> z_points(const CocycleSpec& spec);

// Decide whether v lies in the closed domain attached to spec.
bool membership(const CocycleSpec& spec, const QVec& v,
                Method method = Method::all);

// The finite list of inequalities cutting out the domain, one per point of
// the Weyl orbits of the antidominant-monoid generators.
std::vector<DomainCondition> domain_presentation(const CocycleSpec& spec);

// For GL(n): translate between raw coordinates (the internal ones) and the
// shifted "paper" coordinates paper_i = raw_i + (i-1)*e*f + xi_i.
QVec gl_paper_coordinates(const CocycleSpec& spec, const QVec& raw);
QVec gl_raw_coordinates(const CocycleSpec& spec, const QVec& paper);

// Element of the (completed) group algebra: finitely many lattice points with
// Scalar coefficients.
class GroupRingElt {
 public:
  GroupRingElt() = default;
  static GroupRingElt zero() { return GroupRingElt(); }
  static GroupRingElt basis(const IntVec& lambda);  // e_lambda

  bool is_zero() const { return terms_.empty(); }
  const std::map<IntVec, Scalar>& terms() const { return terms_; }
  void add_term(const IntVec& lambda, const Scalar& c);
  Scalar coefficient(const IntVec& lambda) const;

  GroupRingElt operator+(const GroupRingElt& o) const;
  GroupRingElt operator-(const GroupRingElt& o) const;
  GroupRingElt operator*(const GroupRingElt& o) const;  // group-ring product
  GroupRingElt scaled(const Scalar& c) const;
  bool operator==(const GroupRingElt& o) const { return terms_ == o.terms_; }
  bool operator!=(const GroupRingElt& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::map<IntVec, Scalar> terms_;
};

// The twisted Weyl action: w . sum c_lambda e_lambda
//   = sum gamma(w,lambda) c_lambda e_{w(lambda)}
// (plain permutation for the normalized variant).
GroupRingElt twisted_action(const CocycleSpec& spec, size_t w,
                            const GroupRingElt& x);

bool is_twisted_invariant(const CocycleSpec& spec, const GroupRingElt& x);

// sigma_lambda for antidominant lambda: the symmetrized basis vector
//   sum over orbit (w, mu) of gamma(w, lambda) e_mu.
GroupRingElt sigma(const CocycleSpec& spec, const IntVec& lambda_antidom);

// Gauss norm exponent: min over support of val(coef) + weight_exponent(pt).
// nullopt for zero.
std::optional<Rational> gauss_norm(const CocycleSpec& spec,
                                   const GroupRingElt& x);

}  // namespace pht
