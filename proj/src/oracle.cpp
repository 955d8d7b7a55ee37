#include "pht/oracle.hpp"

#include "pht/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace pht {

namespace {

constexpr long kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                            31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
constexpr size_t kNumPrimes = sizeof(kPrimes) / sizeof(kPrimes[0]);

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string vec_str(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

long long sum_of(const IntVec& v) {
  long long s = 0;
  for (long long x : v) s += x;
  return s;
}

long long spread_of(const IntVec& v) {
  auto mm = std::minmax_element(v.begin(), v.end());
  return *mm.second - *mm.first;
}

long long val_p_ull(unsigned long long k, long p) {
  long long v = 0;
  while (k % (unsigned long long)p == 0) {
    k /= (unsigned long long)p;
    ++v;
  }
  return v;
}

long long pow_ll(long p, long long e) {
  long long r = 1;
  for (long long t = 0; t < e; ++t) r *= p;
  return r;
}

Rational p_power(long p, long long e) {
  if (e >= 0) return rat(pow_ll(p, e));
  return rat(1, pow_ll(p, -e));
}

void validate_pair(const IntVec& lam, const IntVec& mu) {
  if (lam.size() != mu.size() || lam.empty())
    throw std::invalid_argument(
        "count_c: vectors must have equal nonzero length");
  if (lam.size() > 4) throw std::invalid_argument("count_c: dimension bound is 4");
  for (long long x : lam)
    if (x < -4 || x > 4)
      throw std::invalid_argument("count_c: coordinates must lie in [-4, 4]");
  for (long long x : mu)
    if (x < -4 || x > 4)
      throw std::invalid_argument("count_c: coordinates must lie in [-4, 4]");
  for (size_t i = 0; i + 1 < mu.size(); ++i)
    if (mu[i] < mu[i + 1])
      throw std::invalid_argument("count_c: mu must be weakly decreasing");
}

long long resolve_depth(const IntVec& lam, const IntVec& mu,
                        const CountOptions& opts) {
  if (opts.depth < -1)
    throw std::invalid_argument(
        "count_c: depth must be >= 0, or -1 for the default bound");
  return opts.depth == -1 ? default_depth(lam, mu) : opts.depth;
}

// ---- kernel job ---------------------------------------------------------

struct EntrySlot {
  int row = 0, col = 0;        // row > col, 0-based
  long long cap = 0;           // entry runs over k p^{-cap}, 0 <= k < p^cap
  unsigned long long box = 1;  // p^cap (filled for enumerated jobs only)
};

struct Job {
  size_t n = 0;
  IntVec lam, mu;
  long p = 2;
  std::vector<EntrySlot> entries;
  unsigned long long total = 1;  // product of boxes (enumerated jobs)
  long long D = 0;               // p^D t_lam n is integral over the box
  // target[k] = valuation of the gcd of k x k minors of the scaled matrix:
  // the ascending elementary-divisor valuations are D + mu reversed.
  std::vector<long long> target;
};

// Entries whose valuation drops below the smallest invariant of mu can never
// match, so entry (i,j) only needs depth lambda_i - min(mu); deeper classes
// are rejected by the gcd test regardless of the remaining entries.
Job make_job(const IntVec& lam, const IntVec& mu, long p, long long depth,
             unsigned long long max_tuples, bool enumerated) {
  Job job;
  job.n = lam.size();
  job.lam = lam;
  job.mu = mu;
  job.p = p;
  const long long mu_min = mu.back();
  const unsigned long long hard_cap =
      std::min<unsigned long long>(max_tuples, 1ull << 62);
  for (size_t i = 1; i < job.n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      EntrySlot e;
      e.row = static_cast<int>(i);
      e.col = static_cast<int>(j);
      e.cap = std::max(0ll, std::min(depth, lam[i] - mu_min));
      if (enumerated) {
        for (long long t = 0; t < e.cap; ++t) {
          if (e.box > hard_cap / (unsigned long long)p)
            throw std::invalid_argument(
                "count_c: enumeration exceeds max_tuples");
          e.box *= (unsigned long long)p;
        }
        if (e.box != 0 && job.total > hard_cap / e.box)
          throw std::invalid_argument("count_c: enumeration exceeds max_tuples");
        job.total *= e.box;
      }
      job.entries.push_back(e);
    }
  }
  job.D = 0;
  for (size_t i = 0; i < job.n; ++i) job.D = std::max(job.D, -lam[i]);
  for (const EntrySlot& e : job.entries)
    job.D = std::max(job.D, e.cap - lam[e.row]);
  job.target.assign(job.n + 1, 0);
  for (size_t k = 1; k <= job.n; ++k)
    job.target[k] = job.target[k - 1] + job.D + mu[job.n - k];
  return job;
}

// ---- rank-2 closed form --------------------------------------------------
//
// For n = [[1,0],[x,1]], x = k p^{-c}, the invariants of t_lam n are
// determined by d1 = min(lam1, lam2, lam2 + val(x)) alone (the determinant
// valuation is fixed), so the tuples can be counted one valuation class at a
// time. This services coefficient interpolation at primes far beyond what an
// explicit enumeration could reach.
long long count_rank2(const Job& job) {
  const long long c = job.entries[0].cap;
  const long long l1 = job.lam[0], l2 = job.lam[1];
  const long long mu2 = job.mu[1];
  const long long a = std::min(l1, l2);
  if (mu2 > a) return 0;
  if (mu2 == a) {
    // every x with lam2 + val(x) >= mu2, i.e. val_p(k) >= c - (lam2 - mu2)
    const long long t = std::max(0ll, c - (l2 - mu2));
    if (t > c) return 1;  // only k = 0
    return pow_ll(job.p, c - t);
  }
  // need lam2 + val(x) == mu2 exactly: val_p(k) == c - (lam2 - mu2)
  const long long v0 = c - (l2 - mu2);
  if (v0 < 0 || v0 > c - 1) return 0;
  return pow_ll(job.p, c - v0) - pow_ll(job.p, c - v0 - 1);
}

// ---- enumerated kernel -----------------------------------------------

struct Combos {
  std::vector<std::array<int, 2>> c2;
  std::vector<std::array<int, 3>> c3;
};

Combos combos_for(size_t n) {
  Combos cb;
  for (int a = 0; a < (int)n; ++a)
    for (int b = a + 1; b < (int)n; ++b) {
      cb.c2.push_back({a, b});
      for (int c = b + 1; c < (int)n; ++c) cb.c3.push_back({a, b, c});
    }
  return cb;
}

using i128 = __int128;

template <typename Int>
struct IntOps;

template <>
struct IntOps<i128> {
  static i128 power(long p, long long e) {
    i128 r = 1;
    for (long long t = 0; t < e; ++t) r *= p;
    return r;
  }
  static i128 from_ull(unsigned long long k) { return (i128)k; }
  static bool is_zero(i128 x) { return x == 0; }
  static long long val(i128 x, long p) {
    if (x < 0) x = -x;
    long long v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
};

template <>
struct IntOps<mpz_class> {
  static mpz_class power(long p, long long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return r;
  }
  static mpz_class from_ull(unsigned long long k) {
    return mpz_class((unsigned long)k);
  }
  static bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
  static long long val(const mpz_class& x, long p) {
    mpz_class y = abs(x);
    long long v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), (unsigned long)p)) {
      mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), (unsigned long)p);
      ++v;
    }
    return v;
  }
};

template <typename Int>
bool minor_level_matches(const Job& job, const Combos& cb,
                         const std::array<std::array<Int, 4>, 4>& A, size_t k) {
  const long long tgt = job.target[k];
  long long best = LLONG_MAX;
  if (k == 2) {
    for (const auto& r : cb.c2)
      for (const auto& c : cb.c2) {
        Int det = A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]];
        if (IntOps<Int>::is_zero(det)) continue;
        const long long v = IntOps<Int>::val(det, job.p);
        if (v < tgt) return false;
        best = std::min(best, v);
      }
  } else {
    for (const auto& r : cb.c3)
      for (const auto& c : cb.c3) {
        const Int& a00 = A[r[0]][c[0]];
        const Int& a01 = A[r[0]][c[1]];
        const Int& a02 = A[r[0]][c[2]];
        const Int& a10 = A[r[1]][c[0]];
        const Int& a11 = A[r[1]][c[1]];
        const Int& a12 = A[r[1]][c[2]];
        const Int& a20 = A[r[2]][c[0]];
        const Int& a21 = A[r[2]][c[1]];
        const Int& a22 = A[r[2]][c[2]];
        Int det = a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
                  a02 * (a10 * a21 - a11 * a20);
        if (IntOps<Int>::is_zero(det)) continue;
        const long long v = IntOps<Int>::val(det, job.p);
        if (v < tgt) return false;
        best = std::min(best, v);
      }
  }
  return best == tgt;
}

template <typename Int>
bool tuple_matches(const Job& job, const Combos& cb, long long idx) {
  std::array<unsigned long long, 6> ks{};
  unsigned long long rest = (unsigned long long)idx;
  const size_t ne = job.entries.size();
  for (size_t t = 0; t < ne; ++t) {
    ks[t] = rest % job.entries[t].box;
    rest /= job.entries[t].box;
  }
  // The gcd of the entries is readable off the valuations alone.
  long long d1 = LLONG_MAX;
  for (size_t i = 0; i < job.n; ++i) d1 = std::min(d1, job.D + job.lam[i]);
  for (size_t t = 0; t < ne; ++t) {
    if (ks[t] == 0) continue;
    const EntrySlot& e = job.entries[t];
    d1 = std::min(d1, job.D + job.lam[e.row] - e.cap + val_p_ull(ks[t], job.p));
  }
  if (d1 != job.target[1]) return false;
  if (job.n <= 2) return true;  // determinant valuation is structural
  std::array<std::array<Int, 4>, 4> A{};
  for (size_t i = 0; i < job.n; ++i)
    A[i][i] = IntOps<Int>::power(job.p, job.D + job.lam[i]);
  for (size_t t = 0; t < ne; ++t) {
    if (ks[t] == 0) continue;
    const EntrySlot& e = job.entries[t];
    A[e.row][e.col] = IntOps<Int>::from_ull(ks[t]) *
                      IntOps<Int>::power(job.p, job.D + job.lam[e.row] - e.cap);
  }
  for (size_t k = 2; k <= job.n - 1; ++k)
    if (!minor_level_matches<Int>(job, cb, A, k)) return false;
  return true;
}

template <typename Int>
long long enumerate_count(const Job& job, bool parallel) {
  const Combos cb = combos_for(job.n);
  const long long total = (long long)job.total;
  long long count = 0;
  (void)parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count) if (parallel)
#endif
  for (long long idx = 0; idx < total; ++idx) {
    if (tuple_matches<Int>(job, cb, idx)) ++count;
  }
  return count;
}

long long run_enumerated(const Job& job, bool parallel) {
  // Largest integer in play: a (n-1)-minor of the scaled matrix, every
  // factor below p^{D + max lam}. Beyond ~120 bits fall back to bignums.
  const long long k_max = (long long)job.n - 1;
  static const double lg_fact[5] = {0.0, 0.0, 1.0, 2.585, 4.585};
  const long long lam_max = *std::max_element(job.lam.begin(), job.lam.end());
  const double bits = lg_fact[k_max] +
                      (double)k_max * (double)(job.D + lam_max) *
                          std::log2((double)job.p) +
                      1.0;
  if (bits < 120.0) return enumerate_count<i128>(job, parallel);
  return enumerate_count<mpz_class>(job, parallel);
}

long long count_at_depth(const IntVec& lam, const IntVec& mu, long p,
                         long long depth, const CountOptions& opts) {
  if (lam.size() == 2) {
    const Job job = make_job(lam, mu, p, depth, opts.max_tuples, false);
    return count_rank2(job);
  }
  const Job job = make_job(lam, mu, p, depth, opts.max_tuples, true);
  return run_enumerated(job, opts.parallel);
}

}  // namespace

IntVec cartan_invariants(const QMatrix& g, long p) {
  if (!is_prime(p))
    throw std::invalid_argument("cartan_invariants: p must be prime");
  return snf_p_valuations(g, (unsigned long)p);
}

long long default_depth(const IntVec& lambda, const IntVec& mu) {
  if (lambda.empty() || mu.empty() || lambda.size() != mu.size())
    throw std::invalid_argument(
        "default_depth: vectors must have equal nonzero length");
  return spread_of(mu) + spread_of(lambda) + 1;
}

long long count_c(const IntVec& lambda, const IntVec& mu, long p,
                  const CountOptions& opts, StabilizationReport* report) {
  validate_pair(lambda, mu);
  if (!is_prime(p)) throw std::invalid_argument("count_c: p must be prime");
  const long long m = resolve_depth(lambda, mu, opts);
  StabilizationReport rep;
  rep.depth = m;
  if (sum_of(lambda) != sum_of(mu)) {
    // determinant valuations disagree at every depth
    if (report) *report = rep;
    return 0;
  }
  const long long result = count_at_depth(lambda, mu, p, m, opts);
  // Caps saturate once min(depth, lam_i - min mu) is no longer clipped by
  // the depth; then depth m+1 enumerates the identical box.
  bool saturated = true;
  const long long mu_min = mu.back();
  for (size_t i = 1; i < lambda.size(); ++i)
    if (std::max(0ll, lambda[i] - mu_min) > m) {
      saturated = false;
      break;
    }
  if (saturated) {
    rep.next_count = result;
    rep.recounted = false;
  } else {
    rep.next_count = count_at_depth(lambda, mu, p, m + 1, opts);
    rep.recounted = true;
    if (rep.next_count != result) {
      std::ostringstream os;
      os << "count for " << vec_str(lambda) << "," << vec_str(mu)
         << " at p=" << p << " is not stable from depth " << m << " to "
         << (m + 1) << " (" << result << " vs " << rep.next_count << ")";
      if (opts.depth == -1) throw InternalCheckError(os.str());
      throw std::invalid_argument(os.str());
    }
  }
  if (report) *report = rep;
  return result;
}

long long count_c_reference(const IntVec& lambda, const IntVec& mu, long p,
                            const CountOptions& opts) {
  validate_pair(lambda, mu);
  if (!is_prime(p)) throw std::invalid_argument("count_c: p must be prime");
  const long long m = resolve_depth(lambda, mu, opts);
  if (sum_of(lambda) != sum_of(mu)) return 0;
  const size_t n = lambda.size();
  const unsigned long long hard_cap =
      std::min<unsigned long long>(opts.max_tuples, 1ull << 62);
  unsigned long long box = 1;
  for (long long t = 0; t < m; ++t) {
    if (box > hard_cap / (unsigned long long)p)
      throw std::invalid_argument("count_c: enumeration exceeds max_tuples");
    box *= (unsigned long long)p;
  }
  std::vector<std::pair<size_t, size_t>> slots;
  for (size_t i = 1; i < n; ++i)
    for (size_t j = 0; j < i; ++j) slots.push_back({i, j});
  unsigned long long total = 1;
  for (size_t t = 0; t < slots.size(); ++t) {
    if (box != 0 && total > hard_cap / box)
      throw std::invalid_argument("count_c: enumeration exceeds max_tuples");
    total *= box;
  }
  long long count = 0;
  for (unsigned long long idx = 0; idx < total; ++idx) {
    unsigned long long rest = idx;
    std::vector<QVec> rows(n, QVec(n, rat(0)));
    for (size_t i = 0; i < n; ++i) rows[i][i] = p_power(p, lambda[i]);
    for (const auto& slot : slots) {
      const unsigned long long k = rest % box;
      rest /= box;
      rows[slot.first][slot.second] =
          rat((long)k) * p_power(p, lambda[slot.first] - m);
    }
    if (snf_p_valuations(QMatrix::from_rows(rows), (unsigned long)p) == mu)
      ++count;
  }
  return count;
}

std::vector<long long> interpolate_polynomial(const IntVec& lambda,
                                              const IntVec& mu,
                                              const CountOptions& opts) {
  validate_pair(lambda, mu);
  long long deg = 0;
  for (size_t i = 0; i < mu.size(); ++i)
    for (size_t j = i + 1; j < mu.size(); ++j) deg += std::llabs(mu[i] - mu[j]);
  const size_t npts = (size_t)deg + 1;
  if (npts + 1 > kNumPrimes) {
    std::ostringstream os;
    os << "interpolate_polynomial: degree bound " << deg << " needs "
       << (npts + 1) << " primes, only " << kNumPrimes << " available";
    throw std::invalid_argument(os.str());
  }
  std::vector<Rational> xs(npts), dd(npts);
  for (size_t i = 0; i < npts; ++i) {
    xs[i] = rat(kPrimes[i]);
    dd[i] = rat((long)count_c(lambda, mu, kPrimes[i], opts));
  }
  // Newton divided differences, then expansion to monomial coefficients
  for (size_t lvl = 1; lvl < npts; ++lvl)
    for (size_t i = npts - 1; i >= lvl; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
  std::vector<Rational> poly{dd[npts - 1]};
  for (long long i = (long long)npts - 2; i >= 0; --i) {
    std::vector<Rational> next(poly.size() + 1, rat(0));
    for (size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] = next[j + 1] + poly[j];
      next[j] = next[j] - poly[j] * xs[(size_t)i];
    }
    next[0] = next[0] + dd[(size_t)i];
    poly = std::move(next);
  }
  std::vector<long long> out;
  out.reserve(poly.size());
  for (const Rational& cft : poly) {
    if (!is_integer(cft)) {
      std::ostringstream os;
      os << "interpolate_polynomial: non-integer coefficient "
         << rational_string(cft) << " for " << vec_str(lambda) << ","
         << vec_str(mu) << " — degree bound violated";
      throw InternalCheckError(os.str());
    }
    out.push_back(to_ll(cft));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  const long check_p = kPrimes[npts];
  const long long expect = count_c(lambda, mu, check_p, opts);
  Rational value = rat(0);
  for (size_t i = out.size(); i-- > 0;)
    value = value * rat(check_p) + rat((long)out[i]);
  if (value != rat((long)expect)) {
    std::ostringstream os;
    os << "interpolate_polynomial: validation at p=" << check_p << " gives "
       << expect << ", polynomial predicts " << rational_string(value)
       << " for " << vec_str(lambda) << "," << vec_str(mu);
    throw InternalCheckError(os.str());
  }
  return out;
}

OracleCoefficientSource::OracleCoefficientSource(RootDatumPtr datum,
                                                 CountOptions opts)
    : datum_(std::move(datum)), opts_(opts) {
  if (!datum_)
    throw std::invalid_argument("oracle source requires a root datum");
  const bool gl_ok = datum_->is_gl() && datum_->gl_n() <= 4;
  const bool pgl_ok = datum_->name() == "PGL2";
  if (!gl_ok && !pgl_ok)
    throw std::invalid_argument(
        "oracle source supports GL(n), n <= 4, and PGL2");
}

std::optional<Scalar> OracleCoefficientSource::coefficient(
    const IntVec& lambda, const IntVec& mu) const {
  auto poly = polynomial(lambda, mu);
  if (!poly) return std::nullopt;
  return q_polynomial(*poly);
}

std::optional<std::vector<long long>> OracleCoefficientSource::polynomial(
    const IntVec& lambda, const IntVec& mu) const {
  const auto key = std::make_pair(lambda, mu);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, compute(lambda, mu)).first;
  return it->second;
}

std::optional<std::vector<long long>> OracleCoefficientSource::compute(
    const IntVec& lambda, const IntVec& mu) const {
  try {
    if (datum_->is_gl()) {
      const size_t n = (size_t)datum_->rank();
      if (lambda.size() != n || mu.size() != n)
        throw std::invalid_argument(
            "coefficient vectors must match the datum rank");
      return interpolate_polynomial(lambda, mu, opts_);
    }
    // PGL2: count in GL2 on the determinant class pinned by lambda. The
    // cocharacter k lifts to (0, k); the class of mu has a unique lift with
    // matching total, provided the parities agree (otherwise no overlap).
    if (lambda.size() != 1 || mu.size() != 1)
      throw std::invalid_argument(
          "coefficient vectors must match the datum rank");
    const long long a = lambda[0], d = mu[0];
    if ((a - d) % 2 != 0) return std::vector<long long>{};
    const IntVec lam_gl{0, a};
    const IntVec mu_gl{(a - d) / 2, (a + d) / 2};
    return interpolate_polynomial(lam_gl, mu_gl, opts_);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace pht
