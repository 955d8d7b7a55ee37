#pragma once

#include "pht/rational.hpp"

namespace pht {

// Dense rational matrix, row major. rows*cols == data.size().
struct QMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<Rational> data;

  QMatrix() = default;
  QMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, Rational(0)) {}

  Rational& at(size_t i, size_t j) { return data[i * cols + j]; }
  const Rational& at(size_t i, size_t j) const { return data[i * cols + j]; }

  static QMatrix from_rows(const std::vector<QVec>& rows_in);
  static QMatrix identity(size_t n);
  QVec apply(const QVec& v) const;          // matrix * column vector
  QMatrix mul(const QMatrix& other) const;
  QMatrix inverse() const;                  // errors when singular
  Rational det() const;
};

// Rank by fraction-free (Bareiss) elimination after clearing denominators.
size_t rank(const QMatrix& m);

// dim(span(a) `intersect` span(b)); vectors are rows over a common ambient dim.
size_t intersect_dim(const std::vector<QVec>& a, const std::vector<QVec>& b);

// Entries may have p-power denominators only. Scales by p^k to an integer
// matrix, runs integer Smith reduction, returns diagonal p-adic valuations
// minus k, sorted decreasing. Requires square nonsingular input.
IntVec snf_p_valuations(const QMatrix& m, unsigned long p);

// Exact feasibility of { A x = b, x >= 0 } (phase-one simplex, Bland's rule).
bool lp_feasible(const QMatrix& a, const QVec& b);

// v in { sum c_i * rays[i] : c_i >= 0 }?
bool in_cone(const std::vector<QVec>& rays, const QVec& v);

// v in convex hull of the given points?
bool in_hull(const std::vector<QVec>& points, const QVec& v);

}  // namespace pht
