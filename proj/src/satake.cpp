#include "pht/satake.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pht/errors.hpp"

namespace pht {

namespace {

std::string vec_str(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

Scalar fetch_coefficient(const CoefficientSource& coeffs, const IntVec& lambda,
                         const IntVec& mu) {
  auto c = coeffs.coefficient(lambda, mu);
  if (!c) {
    throw std::runtime_error("missing spherical coefficient c" +
                             vec_str(lambda) + "," + vec_str(mu));
  }
  return *c;
}

}  // namespace

void SphericalElt::validate(const RootDatum& datum) const {
  for (const auto& [lam, c] : coeffs) {
    (void)c;
    if (lam.size() != static_cast<size_t>(datum.rank())) {
      throw std::invalid_argument("support vector has wrong size");
    }
    if (!datum.is_antidominant(to_qvec(lam))) {
      throw std::invalid_argument(
          "spherical support must be antidominant: " + vec_str(lam));
    }
  }
}

SphericalElt SphericalElt::operator+(const SphericalElt& o) const {
  SphericalElt out = *this;
  for (const auto& [lam, c] : o.coeffs) {
    auto [it, inserted] = out.coeffs.emplace(lam, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) out.coeffs.erase(it);
    }
  }
  return out;
}

SphericalElt SphericalElt::scaled(const Scalar& c) const {
  SphericalElt out;
  if (c.is_zero()) return out;
  for (const auto& [lam, coef] : coeffs) out.coeffs.emplace(lam, coef * c);
  return out;
}

GroupRingElt satake_transform(const SphericalElt& h, const CocycleSpec& spec,
                              const CoefficientSource& coeffs) {
  spec.validate();
  if (spec.variant != Variant::gamma_xi) {
    throw std::invalid_argument(
        "the transform lands in the xi-plus-modulus twisted invariants");
  }
  h.validate(*spec.datum);
  GroupRingElt out;
  for (const auto& [mu, hmu] : h.coeffs) {
    for (const IntVec& lam : spec.datum->antidominant_lower_set(mu)) {
      Scalar c = fetch_coefficient(coeffs, lam, mu);
      if (c.is_zero()) continue;
      Scalar factor = hmu * c * Scalar::pi_pow(dot(spec.xi, lam));
      out = out + sigma(spec, lam).scaled(factor);
    }
  }
  return out;
}

std::map<IntVec, Scalar> sigma_coordinates(const GroupRingElt& x,
                                           const CocycleSpec& spec) {
  spec.validate();
  const RootDatum& rd = *spec.datum;
  std::map<IntVec, Scalar> coords;
  for (const auto& [lam, c] : x.terms()) {
    if (rd.is_antidominant(to_qvec(lam))) coords.emplace(lam, c);
  }
  GroupRingElt recomposed;
  for (const auto& [lam, c] : coords) {
    recomposed = recomposed + sigma(spec, lam).scaled(c);
  }
  if (!(recomposed == x)) {
    throw std::invalid_argument(
        "element is not a finite combination of symmetrized basis vectors");
  }
  return coords;
}

SphericalElt satake_inverse(const GroupRingElt& x, const CocycleSpec& spec,
                            const CoefficientSource& coeffs) {
  const RootDatum& rd = *spec.datum;
  auto d = sigma_coordinates(x, spec);

  std::set<IntVec> support;
  for (const auto& [lam, c] : d) {
    (void)c;
    for (const IntVec& mu : rd.antidominant_lower_set(lam)) support.insert(mu);
  }

  // Linear extension of the cocharacter order, maximal elements first.
  std::vector<IntVec> order;
  std::set<IntVec> remaining = support;
  while (!remaining.empty()) {
    auto pick = remaining.end();
    for (auto it = remaining.begin(); it != remaining.end(); ++it) {
      bool maximal = true;
      for (auto jt = remaining.begin(); jt != remaining.end(); ++jt) {
        if (it == jt) continue;
        if (rd.leq_lambda(to_qvec(*it), to_qvec(*jt))) {
          maximal = false;
          break;
        }
      }
      if (maximal) {
        pick = it;
        break;
      }
    }
    if (pick == remaining.end()) {
      throw InternalCheckError("cocharacter order has no maximal element");
    }
    order.push_back(*pick);
    remaining.erase(pick);
  }

  std::map<IntVec, Scalar> b;
  for (const IntVec& mu : order) {
    Scalar acc = Scalar::zero();
    auto dit = d.find(mu);
    if (dit != d.end()) acc = dit->second;
    for (const auto& [mu2, bmu2] : b) {
      if (mu2 == mu) continue;
      if (!rd.leq_lambda(to_qvec(mu), to_qvec(mu2))) continue;
      Scalar c = fetch_coefficient(coeffs, mu, mu2);
      acc = acc - bmu2 * c * Scalar::pi_pow(dot(spec.xi, mu));
    }
    Scalar diag = fetch_coefficient(coeffs, mu, mu);
    Scalar bmu =
        acc * Scalar::pi_pow(-dot(spec.xi, mu)) * diag.inverse();
    if (!bmu.is_zero()) b.emplace(mu, bmu);
  }

  SphericalElt result;
  result.coeffs = std::move(b);
  if (!(satake_transform(result, spec, coeffs) == x)) {
    throw std::invalid_argument(
        "support is not a lower set for the transform");
  }
  return result;
}

std::vector<Scalar> gl_symmetric_map(const QVec& zeta, const QVec& xi,
                                     const RootDatumPtr& datum) {
  if (!datum || !datum->is_gl()) {
    throw std::invalid_argument("the symmetric map is defined for GL data");
  }
  size_t n = static_cast<size_t>(datum->gl_n());
  if (zeta.size() != n || xi.size() != n) {
    throw std::invalid_argument("coordinate vector has wrong size");
  }
  for (const Rational& a : xi) {
    if (!is_integer(a)) {
      throw std::invalid_argument("xi must have integer entries");
    }
  }
  if (!datum->is_dominant_char(xi)) {
    throw std::invalid_argument("xi must be dominant (weakly increasing)");
  }

  // Elementary symmetric polynomials of zeta by the product recurrence.
  std::vector<Rational> esym(n + 1, Rational(0));
  esym[0] = 1;
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = std::min(k + 1, n); j >= 1; --j) {
      esym[j] += zeta[k] * esym[j - 1];
    }
  }

  std::vector<Scalar> out;
  Rational partial_xi = 0;
  for (size_t i = 1; i <= n; ++i) {
    partial_xi += xi[i - 1];
    long long qexp = -static_cast<long long>(i) *
                     static_cast<long long>(i - 1) / 2;
    out.push_back(Scalar::of(esym[i], -partial_xi,
                             rat(static_cast<long>(qexp))));
  }
  return out;
}

Scalar q_polynomial(const std::vector<long long>& ascending_coefficients) {
  Scalar out = Scalar::zero();
  for (size_t j = 0; j < ascending_coefficients.size(); ++j) {
    if (ascending_coefficients[j] == 0) continue;
    out.add_term(rat(static_cast<long>(ascending_coefficients[j])), rat(0),
                 rat(static_cast<long>(j)));
  }
  return out;
}

void CoefficientTable::insert(const IntVec& lambda, const IntVec& mu,
                              std::vector<long long> poly) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  Key key{lambda, mu};
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), std::move(poly));
    return;
  }
  if (it->second != poly) {
    throw std::invalid_argument("conflicting coefficient entries for c" +
                                vec_str(lambda) + "," + vec_str(mu));
  }
}

std::optional<Scalar> CoefficientTable::coefficient(const IntVec& lambda,
                                                    const IntVec& mu) const {
  auto it = entries_.find(Key{lambda, mu});
  if (it == entries_.end()) return std::nullopt;
  return q_polynomial(it->second);
}

void CoefficientTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open coefficient table: " + path);
  }
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("bad table line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
    if (!j.is_object() || !j.contains("lambda") || !j.contains("mu") ||
        !j.contains("poly")) {
      throw std::invalid_argument("bad table line " + std::to_string(lineno) +
                                  ": need lambda, mu, poly");
    }
    if (j.contains("datum") && !datum_name_.empty() &&
        j["datum"].get<std::string>() != datum_name_) {
      throw std::invalid_argument(
          "table line " + std::to_string(lineno) + " is for datum " +
          j["datum"].get<std::string>() + ", expected " + datum_name_);
    }
    IntVec lambda = j["lambda"].get<IntVec>();
    IntVec mu = j["mu"].get<IntVec>();
    std::vector<long long> poly = j["poly"].get<std::vector<long long>>();
    insert(lambda, mu, std::move(poly));
  }
}

void CoefficientTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::invalid_argument("cannot write coefficient table: " + path);
  }
  for (const auto& [key, poly] : entries_) {
    nlohmann::json j;
    if (!datum_name_.empty()) j["datum"] = datum_name_;
    j["lambda"] = key.first;
    j["mu"] = key.second;
    j["poly"] = poly;
    out << j.dump() << "\n";
  }
}

void CoefficientTable::append_to(const std::string& path) const {
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw std::invalid_argument("cannot append coefficient table: " + path);
  }
  for (const auto& [key, poly] : entries_) {
    nlohmann::json j;
    if (!datum_name_.empty()) j["datum"] = datum_name_;
    j["lambda"] = key.first;
    j["mu"] = key.second;
    j["poly"] = poly;
    out << j.dump() << "\n";
  }
}

}  // namespace pht
