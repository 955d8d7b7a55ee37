#include "pht/serialize.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pht {

using nlohmann::json;

std::string rational_to_string(const Rational& r) {
  if (is_integer(r)) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_from_string(const std::string& s) { return parse_rational(s); }

json rational_to_json(const Rational& r) {
  if (is_integer(r) && r.get_num().fits_slong_p()) {
    return json(static_cast<long long>(r.get_num().get_si()));
  }
  return json(rational_to_string(r));
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) {
    return rat(static_cast<long>(j.get<long long>()));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a rational string: " +
                              j.dump());
}

json qvec_to_json(const QVec& v) {
  json out = json::array();
  for (const Rational& r : v) out.push_back(rational_to_json(r));
  return out;
}

QVec qvec_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("expected an array of rationals: " + j.dump());
  }
  QVec out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(rational_from_json(e));
  return out;
}

json qvec_to_json_strings(const QVec& v) {
  json out = json::array();
  for (const Rational& r : v) out.push_back(rational_to_string(r));
  return out;
}

json intvec_to_json(const IntVec& v) {
  json out = json::array();
  for (long long x : v) out.push_back(x);
  return out;
}

IntVec intvec_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("expected an array of integers: " + j.dump());
  }
  IntVec out;
  out.reserve(j.size());
  for (const json& e : j) {
    Rational r = rational_from_json(e);
    if (!is_integer(r)) {
      throw std::invalid_argument("expected an integer entry: " + e.dump());
    }
    out.push_back(to_ll(r));
  }
  return out;
}

namespace {

json intvec_list_to_json(const std::vector<IntVec>& vs) {
  json out = json::array();
  for (const IntVec& v : vs) out.push_back(intvec_to_json(v));
  return out;
}

std::vector<IntVec> intvec_list_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("expected an array of integer vectors: " +
                                j.dump());
  }
  std::vector<IntVec> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(intvec_from_json(e));
  return out;
}

// Order-insensitive comparison for redundant root lists in custom descriptors.
bool same_multiset(std::vector<IntVec> a, std::vector<IntVec> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

const json& require_key(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string(what) + " needs a \"" + key +
                                "\" key: " + j.dump());
  }
  return j.at(key);
}

}  // namespace

json datum_to_json(const RootDatumPtr& datum) {
  if (!datum) throw std::invalid_argument("null root datum");
  if (datum->is_gl()) return json{{"type", "GL"}, {"n", datum->gl_n()}};
  if (datum->name() == "PGL2") return json{{"type", "PGL2"}};
  json out;
  out["type"] = "custom";
  out["name"] = datum->name();
  out["simple_roots"] = intvec_list_to_json(datum->simple_roots());
  out["simple_coroots"] = intvec_list_to_json(datum->simple_coroots());
  out["positive_roots"] = intvec_list_to_json(datum->positive_roots());
  out["positive_coroots"] = intvec_list_to_json(datum->positive_coroots());
  return out;
}

RootDatumPtr datum_from_json(const json& j) {
  if (j.is_string()) return root_datum_by_name(j.get<std::string>());
  const json& type = require_key(j, "type", "root datum descriptor");
  if (!type.is_string()) {
    throw std::invalid_argument("root datum \"type\" must be a string");
  }
  const std::string t = type.get<std::string>();
  if (t == "GL") {
    Rational n = rational_from_json(require_key(j, "n", "GL descriptor"));
    if (!is_integer(n)) throw std::invalid_argument("GL rank must be integral");
    return RootDatum::gl(static_cast<int>(to_ll(n)));
  }
  if (t == "PGL2") return RootDatum::pgl2();
  if (t == "custom") {
    auto roots =
        intvec_list_from_json(require_key(j, "simple_roots", "custom datum"));
    auto coroots = intvec_list_from_json(
        require_key(j, "simple_coroots", "custom datum"));
    auto datum = RootDatum::custom(roots, coroots, j.value("name", ""));
    // The positive lists are derived data; when present they must agree.
    if (j.contains("positive_roots") &&
        !same_multiset(intvec_list_from_json(j.at("positive_roots")),
                       datum->positive_roots())) {
      throw std::invalid_argument(
          "custom datum: positive_roots disagree with the simple roots");
    }
    if (j.contains("positive_coroots") &&
        !same_multiset(intvec_list_from_json(j.at("positive_coroots")),
                       datum->positive_coroots())) {
      throw std::invalid_argument(
          "custom datum: positive_coroots disagree with the simple coroots");
    }
    return datum;
  }
  throw std::invalid_argument("unknown root datum type: " + t);
}

json field_to_json(const FieldInvariants& k) {
  return json{{"p", k.p}, {"e", k.e}, {"f", k.f}};
}

FieldInvariants field_from_json(const json& j) {
  FieldInvariants k;
  Rational p = rational_from_json(require_key(j, "p", "field descriptor"));
  Rational e = rational_from_json(require_key(j, "e", "field descriptor"));
  Rational f = rational_from_json(require_key(j, "f", "field descriptor"));
  if (!is_integer(p) || !is_integer(e) || !is_integer(f)) {
    throw std::invalid_argument("field invariants must be integers");
  }
  k.p = static_cast<long>(to_ll(p));
  k.e = static_cast<long>(to_ll(e));
  k.f = static_cast<long>(to_ll(f));
  k.validate();
  return k;
}

json spec_to_json(const CocycleSpec& spec) {
  json out;
  out["datum"] = datum_to_json(spec.datum);
  out["xi"] = qvec_to_json(spec.xi);
  out["field"] = field_to_json(spec.field);
  out["variant"] = variant_to_string(spec.variant);
  return out;
}

CocycleSpec spec_from_json(const json& j) {
  CocycleSpec spec;
  spec.datum = datum_from_json(require_key(j, "datum", "twisting datum"));
  spec.xi = qvec_from_json(require_key(j, "xi", "twisting datum"));
  spec.field = field_from_json(require_key(j, "field", "twisting datum"));
  spec.variant = variant_from_string(j.value("variant", "gamma_xi"));
  spec.validate();
  return spec;
}

json isocrystal_to_json(const FilteredIsocrystal& D) {
  json blocks = json::array();
  for (const FrobeniusBlock& b : D.frobenius.blocks) {
    blocks.push_back(json{{"label", b.label},
                          {"val", rational_to_string(b.valuation)},
                          {"jordan", b.jordan}});
  }
  json jumps = json::array();
  for (const Rational& r : D.flag.jumps) jumps.push_back(rational_to_string(r));
  json bases = json::array();
  for (const auto& step : D.flag.bases) {
    json vecs = json::array();
    for (const QVec& v : step) vecs.push_back(qvec_to_json_strings(v));
    bases.push_back(vecs);
  }
  json out;
  out["frobenius"] = json{{"blocks", blocks}};
  out["flag"] = json{{"jumps", jumps}, {"bases", bases}};
  out["field"] = field_to_json(D.field);
  return out;
}

FilteredIsocrystal isocrystal_from_json(const json& j) {
  FilteredIsocrystal D;
  const json& fr = require_key(j, "frobenius", "filtered isocrystal");
  const json& blocks = require_key(fr, "blocks", "frobenius spec");
  if (!blocks.is_array()) {
    throw std::invalid_argument("frobenius \"blocks\" must be an array");
  }
  for (const json& b : blocks) {
    FrobeniusBlock block;
    const json& label = require_key(b, "label", "frobenius block");
    if (!label.is_string()) {
      throw std::invalid_argument("block \"label\" must be a string");
    }
    block.label = label.get<std::string>();
    block.valuation = rational_from_json(require_key(b, "val", "frobenius block"));
    block.jordan = intvec_from_json(require_key(b, "jordan", "frobenius block"));
    D.frobenius.blocks.push_back(std::move(block));
  }
  const json& flag = require_key(j, "flag", "filtered isocrystal");
  const json& jumps = require_key(flag, "jumps", "filtration flag");
  D.flag.jumps = qvec_from_json(jumps);
  const json& bases = require_key(flag, "bases", "filtration flag");
  if (!bases.is_array()) {
    throw std::invalid_argument("flag \"bases\" must be an array");
  }
  for (const json& step : bases) {
    if (!step.is_array()) {
      throw std::invalid_argument("each filtration step must list its basis");
    }
    std::vector<QVec> vecs;
    for (const json& v : step) vecs.push_back(qvec_from_json(v));
    D.flag.bases.push_back(std::move(vecs));
  }
  D.field = field_from_json(require_key(j, "field", "filtered isocrystal"));
  D.validate();
  return D;
}

namespace {

// Flatten one scalar to monomial entries appended to `out`, each sharing the
// support keys already present in `base`.
void scalar_entries(const Scalar& c, const json& base, json& out) {
  for (const auto& [key, coef] : c.terms()) {
    json e = base;
    e["coeff"] = rational_to_string(coef);
    if (key.first != 0) e["pipow"] = rational_to_json(key.first);
    if (key.second != 0) e["qpow"] = rational_to_json(key.second);
    out.push_back(std::move(e));
  }
}

Scalar entry_scalar(const json& e) {
  Rational coef = rational_from_json(require_key(e, "coeff", "term entry"));
  Rational a = e.contains("pipow") ? rational_from_json(e.at("pipow")) : Rational(0);
  Rational b = e.contains("qpow") ? rational_from_json(e.at("qpow")) : Rational(0);
  return Scalar::of(coef, a, b);
}

}  // namespace

json hecke_to_json(const AffineWeyl& group, const HeckeElt& h) {
  json out = json::array();
  const auto& weyl = group.datum()->weyl();
  for (const auto& [x, c] : h.terms()) {
    json base;
    base["w"] = weyl.at(x.w).word;
    base["lambda"] = intvec_to_json(x.lambda);
    scalar_entries(c, base, out);
  }
  return out;
}

HeckeElt hecke_from_json(const AffineWeyl& group, const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("a Hecke element is a JSON array of terms");
  }
  const RootDatumPtr& datum = group.datum();
  HeckeElt h;
  for (const json& e : j) {
    ExtWeylElt x;
    x.lambda = intvec_from_json(require_key(e, "lambda", "term entry"));
    if (static_cast<int>(x.lambda.size()) != datum->rank()) {
      throw std::invalid_argument("lambda has wrong rank: " + e.dump());
    }
    x.w = datum->weyl_identity();
    if (e.contains("w")) {
      IntVec word = intvec_from_json(e.at("w"));
      for (long long i : word) {
        if (i < 0 || static_cast<size_t>(i) >= datum->num_simple()) {
          throw std::invalid_argument("generator index out of range: " +
                                      std::to_string(i));
        }
        x.w = datum->weyl_mul(x.w, datum->simple_reflection(static_cast<int>(i)));
      }
    }
    h.add_term(x, entry_scalar(e));
  }
  return h;
}

json coords_to_json(const std::map<IntVec, Scalar>& coords) {
  json out = json::array();
  for (const auto& [lambda, c] : coords) {
    json base;
    base["lambda"] = intvec_to_json(lambda);
    scalar_entries(c, base, out);
  }
  return out;
}

std::map<IntVec, Scalar> coords_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("a coordinate list is a JSON array of terms");
  }
  std::map<IntVec, Scalar> out;
  for (const json& e : j) {
    if (e.contains("w") && !e.at("w").empty()) {
      throw std::invalid_argument(
          "coordinate lists carry no finite Weyl part: " + e.dump());
    }
    IntVec lambda = intvec_from_json(require_key(e, "lambda", "term entry"));
    Scalar& slot = out[lambda];
    slot = slot + entry_scalar(e);
    if (slot.is_zero()) out.erase(lambda);
  }
  return out;
}

json spherical_to_json(const SphericalElt& f) { return coords_to_json(f.coeffs); }

SphericalElt spherical_from_json(const json& j) {
  SphericalElt f;
  f.coeffs = coords_from_json(j);
  return f;
}

json conditions_to_json(const std::vector<DomainCondition>& conds) {
  json out = json::array();
  for (const DomainCondition& c : conds) {
    out.push_back(json{{"lambda", intvec_to_json(c.lambda)},
                       {"bound", rational_to_json(c.bound)},
                       {"equality", c.equality}});
  }
  return out;
}

}  // namespace pht
