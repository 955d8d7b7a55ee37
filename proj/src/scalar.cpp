#include "pht/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace pht {

void FieldInvariants::validate() const {
  if (e < 1 || f < 1) throw std::invalid_argument("field invariants need e,f >= 1");
  if (p < 2) throw std::invalid_argument("p must be a prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("p must be a prime");
}

Rational val(const Monomial& m, const FieldInvariants& k) {
  if (m.c == 0) throw std::invalid_argument("valuation of zero monomial");
  long cv = val_p(BigInt(static_cast<long>(m.c)), static_cast<unsigned long>(k.p));
  return Rational(cv) * k.e + m.a + m.b * k.ef();
}

Scalar Scalar::integer(long long n) {
  Scalar s;
  if (n != 0) s.terms_[{Rational(0), Rational(0)}] = Rational(static_cast<long>(n));
  return s;
}

Scalar Scalar::of(const Rational& coef, const Rational& pi_pow,
                  const Rational& q_pow) {
  Scalar s;
  if (coef != 0) s.terms_[{pi_pow, q_pow}] = coef;
  return s;
}

Scalar Scalar::of(const Monomial& m) {
  return of(Rational(static_cast<long>(m.c)), m.a, m.b);
}

Scalar Scalar::q_pow(const Rational& b) { return of(Rational(1), Rational(0), b); }
Scalar Scalar::pi_pow(const Rational& a) { return of(Rational(1), a, Rational(0)); }

void Scalar::insert(const Key& k, const Rational& c) {
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Scalar::add_term(const Rational& coef, const Rational& a, const Rational& b) {
  insert({a, b}, coef);
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar out = *this;
  for (const auto& [k, c] : o.terms_) out.insert(k, c);
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar out = *this;
  for (const auto& [k, c] : o.terms_) out.insert(k, -c);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  for (const auto& [k, c] : terms_) out.terms_[k] = -c;
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar out;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_)
      out.insert({k1.first + k2.first, k1.second + k2.second}, c1 * c2);
  return out;
}

Scalar Scalar::inverse() const {
  if (terms_.size() != 1) throw std::invalid_argument("inverse of non-monomial scalar");
  const auto& [k, c] = *terms_.begin();
  return of(Rational(1) / c, -k.first, -k.second);
}

std::optional<Rational> Scalar::val(const FieldInvariants& k) const {
  std::optional<Rational> best;
  for (const auto& [key, c] : terms_) {
    Rational v = Rational(val_p(c, static_cast<unsigned long>(k.p))) * k.e +
                 key.first + key.second * k.ef();
    if (!best || v < *best) best = v;
  }
  return best;
}

Rational Scalar::substitute(const FieldInvariants& k) const {
  if (k.e != 1)
    throw std::invalid_argument("numeric substitution needs e = 1 (pi = p)");
  Rational out = 0;
  for (const auto& [key, c] : terms_) {
    Rational expo = key.first + key.second * k.f;
    if (!is_integer(expo))
      throw std::invalid_argument("fractional exponent after substitution");
    long long n = to_ll(expo);
    Rational pw = 1;
    for (long long i = 0; i < (n < 0 ? -n : n); ++i) pw *= k.p;
    out += c * (n >= 0 ? pw : Rational(1) / pw);
  }
  return out;
}

Scalar Scalar::divide_exact_by_q_poly(const Scalar& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by zero");
  for (const auto& [k, c] : divisor.terms_)
    if (k.first != 0 || !is_integer(k.second) || k.second < 0)
      throw std::invalid_argument("divisor is not a polynomial in q");
  Rational lead_b = divisor.terms_.rbegin()->first.second;
  Rational lead_c = divisor.terms_.rbegin()->second;
  Rational low_b = divisor.terms_.begin()->first.second;

  // Per pi-power group this is Laurent division in q; an exact quotient can
  // never reach below min_b(group) - min_b(divisor).
  std::map<Rational, std::map<Rational, Rational>> groups;
  for (const auto& [k, c] : terms_) groups[k.first][k.second] = c;

  Scalar quot;
  for (auto& [a, poly] : groups) {
    Rational min_allowed = poly.begin()->first - low_b - lead_b;
    while (!poly.empty()) {
      auto it = poly.rbegin();
      Rational b = it->first;
      Rational qb = b - lead_b;
      Rational qc = it->second / lead_c;
      if (qb < min_allowed)
        throw std::invalid_argument("inexact polynomial division");
      quot.insert({a, qb}, qc);
      for (const auto& [dk, dc] : divisor.terms_) {
        Rational tb = qb + dk.second;
        auto pit = poly.find(tb);
        Rational nc = (pit == poly.end() ? Rational(0) : pit->second) - qc * dc;
        if (pit != poly.end()) poly.erase(pit);
        if (nc != 0) poly[tb] = nc;
      }
    }
  }
  return quot;
}

bool Scalar::is_integer_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& [k, c] = *terms_.begin();
  return k.first == 0 && k.second == 0 && is_integer(c);
}

Rational Scalar::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1) throw std::invalid_argument("non-constant scalar");
  const auto& [k, c] = *terms_.begin();
  if (k.first != 0 || k.second != 0) throw std::invalid_argument("non-constant scalar");
  return c;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (k.first != 0) os << "*pi^" << k.first.get_str();
    if (k.second != 0) os << "*q^" << k.second.get_str();
  }
  return os.str();
}

}  // namespace pht
