#pragma once

#include "pht/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace pht {

// Local field numerics: q = p^f, val_L(pi_L) = 1, val_L(p) = e, val_L(q) = e*f.
struct FieldInvariants {
  long p = 2;
  long e = 1;
  long f = 1;

  long ef() const { return e * f; }
  void validate() const;  // p prime, e >= 1, f >= 1
};

// c * pi^a * q^b with integer c. b leaves (1/2)Z only in normalized-variant
// weights.
struct Monomial {
  Rational a = 0;
  Rational b = 0;
  long long c = 1;
};

Rational val(const Monomial& m, const FieldInvariants& k);

// Finitely supported sum of coef * pi^a * q^b, exponents rational, coef
// rational. The exact scalar ring for all symbolic computations.
class Scalar {
 public:
  using Key = std::pair<Rational, Rational>;  // (a, b)

  Scalar() = default;
  static Scalar zero() { return Scalar(); }
  static Scalar integer(long long n);
  static Scalar of(const Rational& coef, const Rational& pi_pow,
                   const Rational& q_pow);
  static Scalar of(const Monomial& m);
  static Scalar q_pow(const Rational& b);
  static Scalar pi_pow(const Rational& a);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, Rational>& terms() const { return terms_; }
  void add_term(const Rational& coef, const Rational& a, const Rational& b);

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Monomial scalars only; errors otherwise.
  Scalar inverse() const;

  // min over terms of e*val_p(coef) + a + b*e*f; nullopt for zero. A lower
  // bound that is exact when no two terms share a valuation; membership and
  // norm paths only ever see single-valuation leading terms.
  std::optional<Rational> val(const FieldInvariants& k) const;

  // Numeric value with pi = p (requires e == 1) and q = p^f; every combined
  // exponent a + f*b must be an integer.
  Rational substitute(const FieldInvariants& k) const;

  // Exact division by a polynomial in q (keys with a == 0, integer b >= 0).
  // Errors when the division leaves a remainder.
  Scalar divide_exact_by_q_poly(const Scalar& divisor) const;

  bool is_integer_constant() const;
  Rational constant_value() const;  // requires single (0,0) term or zero

  std::string str() const;  // debugging / CLI display

 private:
  std::map<Key, Rational> terms_;
  void insert(const Key& k, const Rational& c);
};

}  // namespace pht
