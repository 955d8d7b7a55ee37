#include "pht/rational.hpp"

#include <stdexcept>

namespace pht {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rational_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long long to_ll(const Rational& r) {
  if (!is_integer(r)) throw std::invalid_argument("not an integer: " + rational_string(r));
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer out of range");
  return r.get_num().get_si();
}

long val_p(const BigInt& n, unsigned long p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  mpz_class rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), BigInt(p).get_mpz_t()));
}

long val_p(const Rational& r, unsigned long p) {
  return val_p(r.get_num(), p) - val_p(r.get_den(), p);
}

QVec to_qvec(const IntVec& v) {
  QVec out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

IntVec to_intvec(const QVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_ll(x));
  return out;
}

static void check_same_size(size_t a, size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

Rational dot(const QVec& a, const QVec& b) {
  check_same_size(a.size(), b.size());
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const QVec& a, const IntVec& b) {
  check_same_size(a.size(), b.size());
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * static_cast<long>(b[i]);
  return s;
}

long long dot(const IntVec& a, const IntVec& b) {
  check_same_size(a.size(), b.size());
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec add(const QVec& a, const QVec& b) {
  check_same_size(a.size(), b.size());
  QVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVec sub(const QVec& a, const QVec& b) {
  check_same_size(a.size(), b.size());
  QVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVec scale(const Rational& c, const QVec& v) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

IntVec add(const IntVec& a, const IntVec& b) {
  check_same_size(a.size(), b.size());
  IntVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  check_same_size(a.size(), b.size());
  IntVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVec neg(const IntVec& a) {
  IntVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

}  // namespace pht
