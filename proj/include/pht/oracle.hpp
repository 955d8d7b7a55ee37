#pragma once

#include "pht/coefficients.hpp"
#include "pht/exactlin.hpp"
#include "pht/rational.hpp"
#include "pht/root_datum.hpp"
#include "pht/scalar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pht {

// Tuning for the coset-counting kernel. depth == -1 selects the saturation
// bound derived from the pair; max_tuples caps the size of any enumeration
// (oversized jobs are refused, never truncated); parallel toggles the OpenMP
// kernel (the reference implementation is always serial).
struct CountOptions {
  long long depth = -1;
  unsigned long long max_tuples = 1ull << 22;
  bool parallel = true;
};

// Filled by count_c: the count is computed at the working depth and again at
// depth+1 and must agree, otherwise count_c throws instead of returning.
// When every per-entry cap is already saturated at the working depth the
// second enumeration is the same sum and is skipped (recounted == false).
struct StabilizationReport {
  long long depth = 0;       // working depth (resolved from CountOptions)
  long long next_count = 0;  // count at depth+1; equals the returned count
  bool recounted = false;    // true when depth+1 required a fresh enumeration
};

// Cartan invariants of a nonsingular rational matrix at p: the p-valuations
// of its elementary divisors, sorted decreasing. Entries must have p-power
// denominators.
IntVec cartan_invariants(const QMatrix& g, long p);

// Saturation depth for a pair: (max mu - min mu) + (max lambda - min lambda)
// + 1. Counts are constant in the depth from here on.
long long default_depth(const IntVec& lambda, const IntVec& mu);

// Number of lower-unipotent matrices n, with entry (i,j) running over the
// representatives k p^{-m} (0 <= k < p^m) of p^{-m} Z / Z, whose scaled
// matrix t_lambda n has Cartan invariants mu. Only entry classes that can
// meet the minimal invariant contribute, so entry (i,j) is effectively
// enumerated to depth min(m, lambda_i - min mu); rank 2 is counted in closed
// form by valuation classes (the enumeration cap does not apply there).
// mu must be weakly decreasing; lambda is any integer vector (invariance
// identities are exercised off the antidominant chamber); n <= 4, entries
// within [-4, 4]. The count is recomputed at depth m+1; disagreement throws
// std::invalid_argument for an explicit depth and InternalCheckError for the
// default depth. Out-of-range jobs and enumerations beyond max_tuples throw
// std::invalid_argument.
long long count_c(const IntVec& lambda, const IntVec& mu, long p,
                  const CountOptions& opts = CountOptions(),
                  StabilizationReport* report = nullptr);

// The same count by literal enumeration of every entry to the full working
// depth, deciding each tuple through generic Smith reduction on rational
// matrices. Serial, no per-entry caps, no closed forms: shares no decision
// logic with count_c, so agreement between the two is meaningful. No
// stabilization pass (use count_c for that); jobs beyond max_tuples throw.
long long count_c_reference(const IntVec& lambda, const IntVec& mu, long p,
                            const CountOptions& opts = CountOptions());

// The count as a polynomial in q: Lagrange interpolation through the counts
// at the first deg+1 primes, where deg is the length of the translation by
// mu, validated at one further prime. Ascending coefficients, no trailing
// zeros. Non-integer coefficients or a failed validation point raise
// InternalCheckError; out-of-range jobs raise std::invalid_argument.
std::vector<long long> interpolate_polynomial(
    const IntVec& lambda, const IntVec& mu,
    const CountOptions& opts = CountOptions());

// Coefficient source backed by the counting kernel, for GL(n) with n <= 4
// and for PGL2 (whose counts reduce to GL2 with matched determinant class).
// Polynomials are interpolated once and memoized; jobs the kernel cannot
// finish within its caps yield nullopt rather than an exception.
class OracleCoefficientSource : public CoefficientSource {
 public:
  explicit OracleCoefficientSource(RootDatumPtr datum,
                                   CountOptions opts = CountOptions());

  std::optional<Scalar> coefficient(const IntVec& lambda,
                                    const IntVec& mu) const override;

  // The underlying integer polynomial, for persisting into a table.
  std::optional<std::vector<long long>> polynomial(const IntVec& lambda,
                                                   const IntVec& mu) const;

 private:
  RootDatumPtr datum_;
  CountOptions opts_;
  mutable std::map<std::pair<IntVec, IntVec>,
                   std::optional<std::vector<long long>>>
      cache_;

  std::optional<std::vector<long long>> compute(const IntVec& lambda,
                                                const IntVec& mu) const;
};

}  // namespace pht
