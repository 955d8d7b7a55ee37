#pragma once

#include "pht/coefficients.hpp"
#include "pht/rational.hpp"
#include "pht/root_datum.hpp"
#include "pht/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pht {

// Element w * t_lambda of the extended affine Weyl group W ⋉ Λ, with w a
// finite Weyl element (index into the datum's table) and lambda a translation.
// Group law: (w, lambda)(v, mu) = (wv, v^{-1}·lambda + mu).
struct ExtWeylElt {
  size_t w = 0;
  IntVec lambda;

  bool operator==(const ExtWeylElt& o) const {
    return w == o.w && lambda == o.lambda;
  }
  bool operator<(const ExtWeylElt& o) const {
    return w != o.w ? w < o.w : lambda < o.lambda;
  }
};

// Per-datum machinery: group law, the length function, affine generators
// s_0..s_e, length-zero elements, reduced words, and the Bruhat order.
class AffineWeyl {
 public:
  explicit AffineWeyl(RootDatumPtr datum);

  const RootDatumPtr& datum() const { return datum_; }

  ExtWeylElt identity() const;
  ExtWeylElt translation(const IntVec& lambda) const;
  ExtWeylElt finite(size_t w) const;
  ExtWeylElt mul(const ExtWeylElt& x, const ExtWeylElt& y) const;
  ExtWeylElt inverse(const ExtWeylElt& x) const;

  // Iwahori–Matsumoto length.
  long long length(const ExtWeylElt& x) const;

  // Affine Coxeter generators: index 0 is the reflection attached to the
  // highest root, indices 1..e are the finite simple reflections.
  size_t num_affine_generators() const { return affine_gens_.size(); }
  const ExtWeylElt& affine_generator(size_t i) const {
    return affine_gens_.at(i);
  }

  // Factor x = omega · x_aff with length(omega) = 0 and x_aff in the affine
  // Weyl group; returns omega and a reduced word for x_aff in the affine
  // generators. Throws when no length-zero representative of the class of
  // x's translation part is known.
  std::pair<ExtWeylElt, std::vector<size_t>> omega_and_word(
      const ExtWeylElt& x) const;

  // Extended Bruhat order: equal length-zero parts and subword comparison.
  bool bruhat_leq(const ExtWeylElt& x, const ExtWeylElt& y) const;

  // Length-zero generator of translation-class +1, when the class group is
  // nontrivial and a representative is known.
  const std::optional<ExtWeylElt>& omega_generator() const {
    return omega_gen_;
  }

  // lambda = first - second with both components antidominant.
  std::pair<IntVec, IntVec> antidominant_difference(const IntVec& lambda) const;

  // All elements of the double coset W t_lambda W (lambda antidominant).
  std::vector<ExtWeylElt> double_coset(const IntVec& lambda) const;

 private:
  RootDatumPtr datum_;
  std::vector<ExtWeylElt> affine_gens_;
  // Length-zero generator of translation-class +1 (empty lambda if the class
  // group is trivial / unknown).
  std::optional<ExtWeylElt> omega_gen_;
  long long omega_order_ = 0;  // 0 = infinite (GL), else finite order
  // Pairings <beta, e_i> for positive roots and the sign table w(beta) > 0.
  std::vector<IntVec> pos_roots_;
  std::vector<std::vector<bool>> stays_positive_;  // [w][root index]

  mutable std::map<ExtWeylElt, std::pair<ExtWeylElt, std::vector<size_t>>>
      word_cache_;
  mutable std::map<std::pair<ExtWeylElt, ExtWeylElt>, bool> bruhat_cache_;

  long long translation_class(const IntVec& lambda) const;
  ExtWeylElt omega_power(long long k) const;
};

// Finitely supported sum of tau_x with exact Scalar coefficients (Laurent in
// q, pi-powers for weight twists). No stored zeros.
class HeckeElt {
 public:
  HeckeElt() = default;
  static HeckeElt tau(const ExtWeylElt& x);
  static HeckeElt zero() { return HeckeElt(); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<ExtWeylElt, Scalar>& terms() const { return terms_; }
  Scalar coefficient(const ExtWeylElt& x) const;
  void add_term(const ExtWeylElt& x, const Scalar& c);

  HeckeElt operator+(const HeckeElt& o) const;
  HeckeElt operator-(const HeckeElt& o) const;
  HeckeElt scaled(const Scalar& c) const;
  bool operator==(const HeckeElt& o) const { return terms_ == o.terms_; }
  bool operator!=(const HeckeElt& o) const { return !(*this == o); }

  std::string str(const AffineWeyl& group) const;

 private:
  std::map<ExtWeylElt, Scalar> terms_;
};

// Product in the Iwahori–Matsumoto presentation: tau_x tau_y = tau_{xy} for
// length-additive pairs, tau_s^2 = (q-1) tau_s + q.
HeckeElt multiply(const AffineWeyl& group, const HeckeElt& a,
                  const HeckeElt& b);

// Inverse of the basis element tau_x.
HeckeElt tau_inverse(const AffineWeyl& group, const ExtWeylElt& x);

// theta_x = q^{(l(x)-l(w)-l(lambda_1)+l(lambda_2))/2}
//             tau_w * tau_{lambda_1} * tau_{lambda_2}^{-1}
// for x = w·t_{lambda_1 - lambda_2} with antidominant lambda_i. The exponent
// is asserted integral.
HeckeElt theta(const AffineWeyl& group, const ExtWeylElt& x);

// Lattice embedding Theta_xi(lambda) = pi^{-<xi,lambda>} tau_{t_{lambda_1}} *
// tau_{t_{lambda_2}}^{-1}.
HeckeElt bernstein_theta(const AffineWeyl& group, const IntVec& lambda,
                         const QVec& xi);

// Valuation-form norm: min over support x = v·t_lambda of
// val(coefficient) + <xi, antidominant representative of lambda>.
// nullopt for the zero element.
std::optional<Rational> norm_xi(const AffineWeyl& group, const HeckeElt& h,
                                const QVec& xi, const FieldInvariants& field);

// Sum of q^{l(w)} over the finite Weyl group.
Scalar poincare_polynomial(const RootDatum& datum);

// Indicator of the double coset W t_lambda W (lambda antidominant).
HeckeElt spherical_embed(const AffineWeyl& group, const IntVec& lambda);

// Coordinates of a W-bi-invariant element in the spherical basis; throws
// std::invalid_argument when the support is not a union of full double
// cosets with constant coefficients.
std::map<IntVec, Scalar> spherical_coordinates(const AffineWeyl& group,
                                               const HeckeElt& h);
bool is_spherical(const AffineWeyl& group, const HeckeElt& h);

// Product in the spherical algebra: the Iwahori product divided by the
// Poincaré polynomial. Both operands must be spherical.
HeckeElt spherical_product(const AffineWeyl& group, const HeckeElt& a,
                           const HeckeElt& b);

// Compatibility of the spherical and Iwahori pictures: the composite
// spherical-indicator * Theta_xi(transform of h) reproduces h, and the
// lattice image of invariant elements is central (commutes with every
// generator tau_{s_i} and with the length-zero elements).
bool check_prop44(const AffineWeyl& group, const HeckeElt& h, const QVec& xi,
                  const FieldInvariants& field, const CoefficientSource& coeffs);

}  // namespace pht
