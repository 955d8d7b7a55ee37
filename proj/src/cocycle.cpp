#include "pht/cocycle.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pht/errors.hpp"
#include "pht/exactlin.hpp"

namespace pht {

namespace {

Rational pair_char(const QVec& chi, const IntVec& lambda) {
  return dot(chi, lambda);
}

Rational pair_char(const QVec& chi, const QVec& v) { return dot(chi, v); }

}  // namespace

Variant variant_from_string(const std::string& s) {
  if (s == "xi_only") return Variant::xi_only;
  if (s == "delta_half") return Variant::delta_half;
  if (s == "gamma_xi") return Variant::gamma_xi;
  if (s == "normalized") return Variant::normalized;
  throw std::invalid_argument("unknown variant: " + s);
}

std::string variant_to_string(Variant v) {
  switch (v) {
    case Variant::xi_only:
      return "xi_only";
    case Variant::delta_half:
      return "delta_half";
    case Variant::gamma_xi:
      return "gamma_xi";
    case Variant::normalized:
      return "normalized";
  }
  throw std::logic_error("unreachable");
}

Method method_from_string(const std::string& s) {
  if (s == "hull") return Method::hull;
  if (s == "dominance") return Method::dominance;
  if (s == "generators") return Method::generators;
  if (s == "all") return Method::all;
  throw std::invalid_argument("unknown method: " + s);
}

std::string method_to_string(Method m) {
  switch (m) {
    case Method::hull:
      return "hull";
    case Method::dominance:
      return "dominance";
    case Method::generators:
      return "generators";
    case Method::all:
      return "all";
  }
  throw std::logic_error("unreachable");
}

void CocycleSpec::validate() const {
  if (!datum) throw std::invalid_argument("missing root datum");
  field.validate();
  if (xi.size() != static_cast<size_t>(datum->rank()))
    throw std::invalid_argument("xi has wrong dimension");
  for (const auto& c : xi)
    if (!is_integer(c))
      throw std::invalid_argument("xi must have integer entries");
  if (!datum->is_dominant_char(xi))
    throw std::invalid_argument("xi must be dominant");
}

QVec CocycleSpec::s_vector() const {
  QVec s = xi;
  const QVec eta = datum->eta();
  const Rational scale = rat(field.ef());
  for (size_t i = 0; i < s.size(); ++i) s[i] += scale * eta[i];
  return s;
}

Monomial gamma(const CocycleSpec& spec, size_t w, const IntVec& lambda) {
  const RootDatum& rd = *spec.datum;
  Monomial m;  // a = 0, b = 0, c = 1
  if (spec.variant == Variant::normalized) return m;
  const IntVec wl = rd.act_cochar(w, lambda);
  if (spec.variant == Variant::xi_only || spec.variant == Variant::gamma_xi)
    m.a = pair_char(spec.xi, wl) - pair_char(spec.xi, lambda);
  if (spec.variant == Variant::delta_half ||
      spec.variant == Variant::gamma_xi)
    m.b = pair_char(rd.eta(), wl) - pair_char(rd.eta(), lambda);
  // lambda - w(lambda) lies in the coroot lattice and eta pairs integrally
  // with every coroot, so the q-power is an integer; half-integral q-powers
  // belong to the normalized variant's weight function only.
  if (!is_integer(m.b))
    throw std::logic_error("non-integral q-power in cocycle value");
  return m;
}

Monomial gamma_dom(const CocycleSpec& spec, const IntVec& lambda) {
  const auto [rep, w] = spec.datum->antidominant_rep(to_qvec(lambda));
  (void)rep;
  return gamma(spec, w, lambda);
}

Rational weight_exponent(const CocycleSpec& spec, const IntVec& lambda) {
  const auto [rep, w] = spec.datum->antidominant_rep(to_qvec(lambda));
  if (spec.variant == Variant::normalized)
    return pair_char(spec.s_vector(), rep);
  (void)w;
  return val(gamma_dom(spec, lambda), spec.field);
}

std::vector<QVec> z_points(const CocycleSpec& spec) {
  if (spec.variant != Variant::gamma_xi &&
      spec.variant != Variant::normalized)
    throw std::invalid_argument(
        "z points are defined for the gamma_xi and normalized variants only");
  const RootDatum& rd = *spec.datum;
  const QVec s = spec.s_vector();
  std::vector<QVec> out;
  out.reserve(rd.weyl().size());
  for (size_t w = 0; w < rd.weyl().size(); ++w)
    out.push_back(sub(s, rd.act_char(w, s)));
  return out;
}

namespace {

bool membership_hull(const CocycleSpec& spec, const QVec& v) {
  // gamma_xi: v in conv{ w(s) - s } (the negated z points); normalized:
  // v in conv{ w(s) }.
  const RootDatum& rd = *spec.datum;
  const QVec s = spec.s_vector();
  std::vector<QVec> pts;
  pts.reserve(rd.weyl().size());
  for (size_t w = 0; w < rd.weyl().size(); ++w) {
    QVec ws = rd.act_char(w, s);
    pts.push_back(spec.variant == Variant::normalized ? ws : sub(ws, s));
  }
  return in_hull(pts, v);
}

bool membership_dominance(const CocycleSpec& spec, const QVec& v) {
  const RootDatum& rd = *spec.datum;
  const QVec s = spec.s_vector();
  if (spec.variant == Variant::normalized) {
    return rd.leq_dominance(rd.dominant_rearrange(v), rd.dominant_rearrange(s));
  }
  return rd.leq_dominance(rd.dominant_rearrange(add(v, s)),
                          rd.dominant_rearrange(s));
}

bool membership_generators(const CocycleSpec& spec, const QVec& v) {
  for (const auto& cond : domain_presentation(spec)) {
    if (dot(v, cond.lambda) < cond.bound) return false;
  }
  return true;
}

}  // namespace

bool membership(const CocycleSpec& spec, const QVec& v, Method method) {
  if (spec.variant != Variant::gamma_xi &&
      spec.variant != Variant::normalized)
    throw std::invalid_argument(
        "membership is defined for the gamma_xi and normalized variants only");
  if (v.size() != static_cast<size_t>(spec.datum->rank()))
    throw std::invalid_argument("vector has wrong dimension");
  switch (method) {
    case Method::hull:
      return membership_hull(spec, v);
    case Method::dominance:
      return membership_dominance(spec, v);
    case Method::generators:
      return membership_generators(spec, v);
    case Method::all: {
      const bool h = membership_hull(spec, v);
      const bool d = membership_dominance(spec, v);
      const bool g = membership_generators(spec, v);
      if (h != d || d != g) {
        std::ostringstream os;
        os << "membership methods disagree (hull=" << h << ", dominance=" << d
           << ", generators=" << g << ") at v =";
        for (const auto& c : v) os << " " << rational_string(c);
        throw InternalCheckError(os.str());
      }
      return h;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<DomainCondition> domain_presentation(const CocycleSpec& spec) {
  if (spec.variant != Variant::gamma_xi &&
      spec.variant != Variant::normalized)
    throw std::invalid_argument(
        "the domain is defined for the gamma_xi and normalized variants only");
  const RootDatum& rd = *spec.datum;

  // Collect the full Weyl orbits of the antidominant monoid generators.
  std::set<IntVec> orbit_pts;
  for (const auto& gen : rd.antidominant_generators()) {
    for (const auto& [w, mu] : rd.weyl_orbit(to_qvec(gen))) {
      (void)w;
      orbit_pts.insert(to_intvec(mu));
    }
  }

  std::vector<DomainCondition> out;
  for (const auto& mu : orbit_pts) {
    DomainCondition cond;
    cond.lambda = mu;
    cond.bound = weight_exponent(spec, mu);
    // Equality exactly on the invertible part of the monoid: mu is Weyl-fixed
    // and its negative is also a listed generator, so the paired inequalities
    // pin a hyperplane.
    cond.equality = rd.is_antidominant(to_qvec(mu)) &&
                    rd.is_antidominant(to_qvec(neg(mu))) &&
                    orbit_pts.count(neg(mu)) > 0;
    out.push_back(std::move(cond));
  }
  return out;
}

QVec gl_paper_coordinates(const CocycleSpec& spec, const QVec& raw) {
  if (!spec.datum->is_gl())
    throw std::invalid_argument("paper coordinates exist for GL(n) only");
  if (raw.size() != static_cast<size_t>(spec.datum->rank()))
    throw std::invalid_argument("vector has wrong dimension");
  QVec out = raw;
  for (size_t i = 0; i < out.size(); ++i)
    out[i] += rat(static_cast<long>(i) * spec.field.ef()) + spec.xi[i];
  return out;
}

QVec gl_raw_coordinates(const CocycleSpec& spec, const QVec& paper) {
  if (!spec.datum->is_gl())
    throw std::invalid_argument("paper coordinates exist for GL(n) only");
  if (paper.size() != static_cast<size_t>(spec.datum->rank()))
    throw std::invalid_argument("vector has wrong dimension");
  QVec out = paper;
  for (size_t i = 0; i < out.size(); ++i)
    out[i] -= rat(static_cast<long>(i) * spec.field.ef()) + spec.xi[i];
  return out;
}

GroupRingElt GroupRingElt::basis(const IntVec& lambda) {
  GroupRingElt x;
  x.terms_.emplace(lambda, Scalar::integer(1));
  return x;
}

void GroupRingElt::add_term(const IntVec& lambda, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(lambda);
  if (it == terms_.end()) {
    terms_.emplace(lambda, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar GroupRingElt::coefficient(const IntVec& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Scalar::zero() : it->second;
}

GroupRingElt GroupRingElt::operator+(const GroupRingElt& o) const {
  GroupRingElt out = *this;
  for (const auto& [l, c] : o.terms_) out.add_term(l, c);
  return out;
}

GroupRingElt GroupRingElt::operator-(const GroupRingElt& o) const {
  GroupRingElt out = *this;
  for (const auto& [l, c] : o.terms_) out.add_term(l, -c);
  return out;
}

GroupRingElt GroupRingElt::operator*(const GroupRingElt& o) const {
  GroupRingElt out;
  for (const auto& [l1, c1] : terms_)
    for (const auto& [l2, c2] : o.terms_) out.add_term(add(l1, l2), c1 * c2);
  return out;
}

GroupRingElt GroupRingElt::scaled(const Scalar& c) const {
  GroupRingElt out;
  for (const auto& [l, x] : terms_) out.add_term(l, x * c);
  return out;
}

std::string GroupRingElt::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*e[";
    for (size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
    os << "]";
  }
  return os.str();
}

GroupRingElt twisted_action(const CocycleSpec& spec, size_t w,
                            const GroupRingElt& x) {
  const RootDatum& rd = *spec.datum;
  GroupRingElt out;
  for (const auto& [lambda, c] : x.terms()) {
    const IntVec wl = rd.act_cochar(w, lambda);
    out.add_term(wl, c * Scalar::of(gamma(spec, w, lambda)));
  }
  return out;
}

bool is_twisted_invariant(const CocycleSpec& spec, const GroupRingElt& x) {
  for (size_t i = 0; i < spec.datum->num_simple(); ++i) {
    const size_t si = spec.datum->simple_reflection(static_cast<int>(i));
    if (twisted_action(spec, si, x) != x) return false;
  }
  return true;
}

GroupRingElt sigma(const CocycleSpec& spec, const IntVec& lambda_antidom) {
  const RootDatum& rd = *spec.datum;
  if (!rd.is_antidominant(to_qvec(lambda_antidom)))
    throw std::invalid_argument("sigma requires an antidominant lattice point");
  GroupRingElt out;
  for (const auto& [w, mu] : rd.weyl_orbit(to_qvec(lambda_antidom)))
    out.add_term(to_intvec(mu), Scalar::of(gamma(spec, w, lambda_antidom)));
  return out;
}

std::optional<Rational> gauss_norm(const CocycleSpec& spec,
                                   const GroupRingElt& x) {
  std::optional<Rational> best;
  for (const auto& [lambda, c] : x.terms()) {
    const auto vc = c.val(spec.field);
    if (!vc) continue;
    const Rational v = *vc + weight_exponent(spec, lambda);
    if (!best || v < *best) best = v;
  }
  return best;
}

}  // namespace pht
