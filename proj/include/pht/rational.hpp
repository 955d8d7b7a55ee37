#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pht {

using Rational = mpq_class;
using BigInt = mpz_class;

// GMP does not canonicalize two-argument mpq construction on its own.
inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "num", "num/den", leading '-'; den > 0 after canonicalization.
Rational parse_rational(const std::string& s);

// Always "num/den" (fixed-shape diagnostic form; the wire form in
// serialize.hpp shortens integers to "num").
std::string rational_string(const Rational& r);

bool is_integer(const Rational& r);

// Requires is_integer and magnitude within long long range.
long long to_ll(const Rational& r);

// p-adic valuation of a nonzero rational.
long val_p(const Rational& r, unsigned long p);

long val_p(const BigInt& n, unsigned long p);

using QVec = std::vector<Rational>;
using IntVec = std::vector<long long>;

QVec to_qvec(const IntVec& v);
// Requires every coordinate integral.
IntVec to_intvec(const QVec& v);

Rational dot(const QVec& a, const QVec& b);
Rational dot(const QVec& a, const IntVec& b);
long long dot(const IntVec& a, const IntVec& b);

QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rational& c, const QVec& v);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec neg(const IntVec& a);

}  // namespace pht
