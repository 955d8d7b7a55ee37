#include "pht/exactlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace pht {

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows_in) {
  QMatrix m;
  m.rows = rows_in.size();
  m.cols = rows_in.empty() ? 0 : rows_in[0].size();
  m.data.reserve(m.rows * m.cols);
  for (const auto& r : rows_in) {
    if (r.size() != m.cols) throw std::invalid_argument("dimension mismatch");
    for (const auto& x : r) m.data.push_back(x);
  }
  return m;
}

QMatrix QMatrix::identity(size_t n) {
  QMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QVec QMatrix::apply(const QVec& v) const {
  if (v.size() != cols) throw std::invalid_argument("dimension mismatch");
  QVec out(rows, Rational(0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (at(i, j) != 0) out[i] += at(i, j) * v[j];
  return out;
}

QMatrix QMatrix::mul(const QMatrix& other) const {
  if (cols != other.rows) throw std::invalid_argument("dimension mismatch");
  QMatrix out(rows, other.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (size_t j = 0; j < other.cols; ++j)
        out.at(i, j) += at(i, k) * other.at(k, j);
    }
  return out;
}

Rational QMatrix::det() const {
  if (rows != cols) throw std::invalid_argument("determinant of non-square matrix");
  QMatrix m = *this;
  Rational d = 1;
  for (size_t c = 0; c < cols; ++c) {
    size_t piv = c;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) return Rational(0);
    if (piv != c) {
      for (size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    for (size_t i = c + 1; i < rows; ++i) {
      if (m.at(i, c) == 0) continue;
      Rational f = m.at(i, c) / m.at(c, c);
      for (size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

QMatrix QMatrix::inverse() const {
  if (rows != cols) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = rows;
  QMatrix m = *this;
  QMatrix inv = identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m.at(piv, c) == 0) ++piv;
    if (piv == n) throw std::invalid_argument("singular matrix");
    if (piv != c)
      for (size_t j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    Rational p = m.at(c, c);
    for (size_t j = 0; j < n; ++j) {
      m.at(c, j) /= p;
      inv.at(c, j) /= p;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (size_t j = 0; j < n; ++j) {
        m.at(i, j) -= f * m.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

// Integer matrix with per-row denominators cleared; scaling rows keeps rank.
static std::vector<std::vector<BigInt>> cleared_rows(const QMatrix& m) {
  std::vector<std::vector<BigInt>> out(m.rows, std::vector<BigInt>(m.cols));
  for (size_t i = 0; i < m.rows; ++i) {
    BigInt l = 1;
    for (size_t j = 0; j < m.cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (size_t j = 0; j < m.cols; ++j) {
      Rational v = m.at(i, j) * Rational(l);
      out[i][j] = v.get_num();
    }
  }
  return out;
}

size_t rank(const QMatrix& m) {
  auto a = cleared_rows(m);
  size_t nr = m.rows, nc = m.cols;
  size_t r = 0;
  BigInt prev = 1;
  for (size_t c = 0; c < nc && r < nr; ++c) {
    size_t piv = r;
    while (piv < nr && a[piv][c] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(a[piv], a[r]);
    for (size_t i = r + 1; i < nr; ++i) {
      for (size_t j = c + 1; j < nc; ++j)
        a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

size_t intersect_dim(const std::vector<QVec>& a, const std::vector<QVec>& b) {
  if (a.empty() || b.empty()) return 0;
  if (a[0].size() != b[0].size()) throw std::invalid_argument("dimension mismatch");
  std::vector<QVec> joint = a;
  joint.insert(joint.end(), b.begin(), b.end());
  size_t ra = rank(QMatrix::from_rows(a));
  size_t rb = rank(QMatrix::from_rows(b));
  size_t rj = rank(QMatrix::from_rows(joint));
  return ra + rb - rj;
}

IntVec snf_p_valuations(const QMatrix& m, unsigned long p) {
  if (m.rows != m.cols) throw std::invalid_argument("snf needs a square matrix");
  size_t n = m.rows;
  long k = 0;
  for (const auto& x : m.data) {
    BigInt den = x.get_den();
    if (den == 1) continue;
    BigInt rest;
    long v = static_cast<long>(
        mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), BigInt(p).get_mpz_t()));
    if (rest != 1)
      throw std::invalid_argument("denominator is not a p power");
    k = std::max(k, v);
  }
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rational v = m.at(i, j) * Rational(pk);
      a[i][j] = v.get_num();
    }

  // Smith reduction over Z: produce diagonal with d_t | d_{t+1}.
  for (size_t t = 0; t < n; ++t) {
    while (true) {
      size_t bi = n, bj = n;
      for (size_t i = t; i < n; ++i)
        for (size_t j = t; j < n; ++j)
          if (a[i][j] != 0 &&
              (bi == n || cmp(abs(a[i][j]), abs(a[bi][bj])) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == n) throw std::invalid_argument("singular input");
      std::swap(a[bi], a[t]);
      for (size_t i = 0; i < n; ++i) std::swap(a[i][bj], a[i][t]);

      bool clean = true;
      for (size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        if (q != 0)
          for (size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        if (q != 0)
          for (size_t i = t; i < n; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (size_t i = t + 1; i < n && divides; ++i)
        for (size_t j = t + 1; j < n && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (size_t jj = t; jj < n; ++jj) a[t][jj] += a[i][jj];
            divides = false;
          }
      if (divides) break;
    }
  }

  IntVec vals(n);
  for (size_t i = 0; i < n; ++i)
    vals[i] = val_p(a[i][i], p) - k;
  std::sort(vals.begin(), vals.end(), std::greater<long long>());
  return vals;
}

bool lp_feasible(const QMatrix& a, const QVec& b) {
  if (b.size() != a.rows) throw std::invalid_argument("dimension mismatch");
  size_t m = a.rows, n = a.cols;
  // Tableau [A | I | b] with artificial basis; rows flipped so b >= 0.
  std::vector<QVec> t(m, QVec(n + m + 1, Rational(0)));
  for (size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (size_t j = 0; j < n; ++j) t[i][j] = flip ? -a.at(i, j) : a.at(i, j);
    t[i][n + i] = 1;
    t[i][n + m] = flip ? -b[i] : b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  auto cost = [&](size_t j) { return j >= n ? Rational(1) : Rational(0); };
  while (true) {
    // Reduced costs under Bland's rule: first negative wins.
    size_t enter = n + m;
    for (size_t j = 0; j < n + m && enter == n + m; ++j) {
      Rational rc = cost(j);
      for (size_t i = 0; i < m; ++i)
        if (cost(basis[i]) != 0) rc -= cost(basis[i]) * t[i][j];
      if (rc < 0) enter = j;
    }
    if (enter == n + m) break;
    size_t leave = m;
    Rational best;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw std::logic_error("phase-one simplex unbounded");
    Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  Rational obj = 0;
  for (size_t i = 0; i < m; ++i)
    if (cost(basis[i]) != 0) obj += t[i][n + m];
  return obj == 0;
}

bool in_cone(const std::vector<QVec>& rays, const QVec& v) {
  size_t dim = v.size();
  QMatrix a(dim, rays.size());
  for (size_t j = 0; j < rays.size(); ++j) {
    if (rays[j].size() != dim) throw std::invalid_argument("dimension mismatch");
    for (size_t i = 0; i < dim; ++i) a.at(i, j) = rays[j][i];
  }
  return lp_feasible(a, v);
}

bool in_hull(const std::vector<QVec>& points, const QVec& v) {
  if (points.empty()) return false;
  size_t dim = v.size();
  QMatrix a(dim + 1, points.size());
  for (size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != dim) throw std::invalid_argument("dimension mismatch");
    for (size_t i = 0; i < dim; ++i) a.at(i, j) = points[j][i];
    a.at(dim, j) = 1;
  }
  QVec b = v;
  b.push_back(Rational(1));
  return lp_feasible(a, b);
}

}  // namespace pht
