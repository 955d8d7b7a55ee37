#pragma once

#include "pht/rational.hpp"
#include "pht/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pht {

// Supplier of spherical expansion coefficients c(lambda, mu) as exact
// polynomials in q. Backed either by a persisted table or by the counting
// kernel; consumers must not guess missing values.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;

  // c(lambda, mu) as a polynomial in q, or nullopt when unavailable.
  // lambda may be any lattice point; mu must be antidominant.
  virtual std::optional<Scalar> coefficient(const IntVec& lambda,
                                            const IntVec& mu) const = 0;
};

// Integer polynomials in q keyed by (datum name, lambda, mu), persisted as
// JSON lines {"datum":..., "lambda":[...], "mu":[...], "poly":[c0,c1,...]}.
// Duplicate keys must carry identical polynomials.
class CoefficientTable : public CoefficientSource {
 public:
  using Key = std::pair<IntVec, IntVec>;

  CoefficientTable() = default;
  explicit CoefficientTable(std::string datum_name)
      : datum_name_(std::move(datum_name)) {}

  const std::string& datum_name() const { return datum_name_; }

  // Ascending coefficients, no trailing zeros stored.
  void insert(const IntVec& lambda, const IntVec& mu,
              std::vector<long long> poly);
  std::optional<Scalar> coefficient(const IntVec& lambda,
                                    const IntVec& mu) const override;
  const std::map<Key, std::vector<long long>>& entries() const {
    return entries_;
  }

  // JSON-lines persistence; append-only on disk, disagreement on load throws.
  void load(const std::string& path);
  void save(const std::string& path) const;
  void append_to(const std::string& path) const;

 private:
  std::string datum_name_;
  std::map<Key, std::vector<long long>> entries_;
};

// The polynomial as a Scalar in q (helper shared by table and oracle paths).
Scalar q_polynomial(const std::vector<long long>& ascending_coefficients);

}  // namespace pht
