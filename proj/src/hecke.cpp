#include "pht/hecke.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pht/cocycle.hpp"
#include "pht/errors.hpp"
#include "pht/satake.hpp"

namespace pht {

namespace {

IntVec zero_vec(const RootDatum& rd) {
  return IntVec(static_cast<size_t>(rd.rank()), 0);
}

// Iterate lambda over the box {-1,0,1}^rank.
bool next_in_box(IntVec& v) {
  for (auto& c : v) {
    if (c < 1) {
      ++c;
      return true;
    }
    c = -1;
  }
  return false;
}

// Integer solution k of (sum_j k_j coroot_j) = target, if one exists. The
// simple coroots are linearly independent, so Gaussian elimination over the
// rationals decides solvability and integrality exactly.
std::optional<std::vector<Rational>> coroot_combination(const RootDatum& rd,
                                                        const IntVec& target) {
  const auto& cors = rd.simple_coroots();
  size_t rows = static_cast<size_t>(rd.rank());
  size_t cols = cors.size();
  // Augmented matrix [A | target], columns of A are the simple coroots.
  std::vector<QVec> m(rows, QVec(cols + 1, Rational(0)));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) m[r][c] = rat(cors[c][r]);
    m[r][cols] = rat(target[r]);
  }
  std::vector<long long> pivot_col_of_row(rows, -1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (size_t c = col; c <= cols; ++c) m[row][c] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational factor = m[r][col];
      for (size_t c = col; c <= cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivot_col_of_row[row] = static_cast<long long>(col);
    ++row;
  }
  // Consistency: zero rows must have zero rhs.
  for (size_t r = row; r < rows; ++r) {
    if (m[r][cols] != 0) return std::nullopt;
  }
  std::vector<Rational> sol(cols, Rational(0));
  for (size_t r = 0; r < row; ++r) {
    sol[static_cast<size_t>(pivot_col_of_row[r])] = m[r][cols];
  }
  return sol;
}

}  // namespace

AffineWeyl::AffineWeyl(RootDatumPtr datum) : datum_(std::move(datum)) {
  const RootDatum& rd = *datum_;
  pos_roots_ = rd.positive_roots();
  std::set<IntVec> positive(pos_roots_.begin(), pos_roots_.end());
  stays_positive_.assign(rd.weyl_size(),
                         std::vector<bool>(pos_roots_.size(), false));
  for (size_t w = 0; w < rd.weyl_size(); ++w) {
    for (size_t b = 0; b < pos_roots_.size(); ++b) {
      IntVec img = to_intvec(rd.act_char(w, to_qvec(pos_roots_[b])));
      bool pos = positive.count(img) > 0;
      if (!pos && !positive.count(neg(img))) {
        throw InternalCheckError("Weyl image of a root is not a root");
      }
      stays_positive_[w][b] = pos;
    }
  }

  // s_0 = s_theta * t_{theta_vee}: locate the reflection in the highest root
  // by its cocharacter action v -> v - <theta, v> theta_vee.
  const IntVec& theta = rd.highest_root();
  const IntVec& theta_vee = rd.highest_coroot();
  size_t s_theta = rd.weyl_size();
  size_t n = static_cast<size_t>(rd.rank());
  for (size_t w = 0; w < rd.weyl_size(); ++w) {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i) {
      IntVec basis(n, 0);
      basis[i] = 1;
      IntVec expected = basis;
      for (size_t j = 0; j < n; ++j) expected[j] -= theta[i] * theta_vee[j];
      match = (rd.act_cochar(w, basis) == expected);
    }
    if (match) {
      s_theta = w;
      break;
    }
  }
  if (s_theta == rd.weyl_size()) {
    throw InternalCheckError("highest-root reflection not found");
  }
  affine_gens_.clear();
  affine_gens_.push_back(ExtWeylElt{s_theta, theta_vee});
  for (size_t i = 0; i < rd.num_simple(); ++i) {
    affine_gens_.push_back(finite(rd.simple_reflection(static_cast<int>(i))));
  }
  for (const auto& g : affine_gens_) {
    if (length(g) != 1) {
      throw InternalCheckError("affine generator does not have length one");
    }
  }

  // Length-zero generator of translation-class +1.
  if (rd.is_gl()) {
    omega_order_ = 0;  // infinite cyclic class group Z
    for (size_t w = 0; w < rd.weyl_size() && !omega_gen_; ++w) {
      IntVec lam(n, -1);
      do {
        long long total = 0;
        for (long long c : lam) total += c;
        if (total != 1) continue;
        ExtWeylElt cand{w, lam};
        if (length(cand) == 0) {
          omega_gen_ = cand;
          break;
        }
      } while (next_in_box(lam));
    }
    if (!omega_gen_) {
      throw InternalCheckError("length-zero class generator not found");
    }
  } else if (rd.name() == "PGL2") {
    omega_order_ = 2;
    for (size_t w = 0; w < rd.weyl_size() && !omega_gen_; ++w) {
      for (long long l : {-1LL, 1LL}) {
        ExtWeylElt cand{w, IntVec{l}};
        if (length(cand) == 0) {
          omega_gen_ = cand;
          break;
        }
      }
    }
    if (!omega_gen_) {
      throw InternalCheckError("length-zero class generator not found");
    }
  } else {
    omega_order_ = 1;  // only the trivial class is representable
  }
}

ExtWeylElt AffineWeyl::identity() const {
  return ExtWeylElt{datum_->weyl_identity(), zero_vec(*datum_)};
}

ExtWeylElt AffineWeyl::translation(const IntVec& lambda) const {
  if (lambda.size() != static_cast<size_t>(datum_->rank())) {
    throw std::invalid_argument("translation vector has wrong size");
  }
  return ExtWeylElt{datum_->weyl_identity(), lambda};
}

ExtWeylElt AffineWeyl::finite(size_t w) const {
  if (w >= datum_->weyl_size()) {
    throw std::invalid_argument("Weyl index out of range");
  }
  return ExtWeylElt{w, zero_vec(*datum_)};
}

ExtWeylElt AffineWeyl::mul(const ExtWeylElt& x, const ExtWeylElt& y) const {
  size_t w = datum_->weyl_mul(x.w, y.w);
  IntVec moved = datum_->act_cochar(datum_->weyl_inverse(y.w), x.lambda);
  return ExtWeylElt{w, add(moved, y.lambda)};
}

ExtWeylElt AffineWeyl::inverse(const ExtWeylElt& x) const {
  return ExtWeylElt{datum_->weyl_inverse(x.w),
                    neg(datum_->act_cochar(x.w, x.lambda))};
}

long long AffineWeyl::length(const ExtWeylElt& x) const {
  long long total = 0;
  for (size_t b = 0; b < pos_roots_.size(); ++b) {
    long long pairing = dot(pos_roots_[b], x.lambda);
    if (stays_positive_[x.w][b]) {
      total += std::llabs(pairing);
    } else {
      total += std::llabs(pairing - 1);
    }
  }
  return total;
}

long long AffineWeyl::translation_class(const IntVec& lambda) const {
  const RootDatum& rd = *datum_;
  if (rd.is_gl()) {
    long long total = 0;
    for (long long c : lambda) total += c;
    return total;
  }
  if (rd.name() == "PGL2") {
    return ((lambda[0] % 2) + 2) % 2;
  }
  auto combo = coroot_combination(rd, lambda);
  if (!combo) {
    throw std::invalid_argument(
        "translation lies outside the coroot lattice span");
  }
  for (const Rational& k : *combo) {
    if (!is_integer(k)) {
      throw std::invalid_argument(
          "translation class is nontrivial and no length-zero representative "
          "is known for this datum");
    }
  }
  return 0;
}

ExtWeylElt AffineWeyl::omega_power(long long k) const {
  if (omega_order_ > 0 && omega_gen_) {
    k = ((k % omega_order_) + omega_order_) % omega_order_;
  }
  if (k == 0) return identity();
  if (!omega_gen_) {
    throw std::invalid_argument("no length-zero class generator available");
  }
  ExtWeylElt step = k > 0 ? *omega_gen_ : inverse(*omega_gen_);
  ExtWeylElt out = identity();
  for (long long i = 0; i < std::llabs(k); ++i) out = mul(out, step);
  return out;
}

std::pair<ExtWeylElt, std::vector<size_t>> AffineWeyl::omega_and_word(
    const ExtWeylElt& x) const {
  auto it = word_cache_.find(x);
  if (it != word_cache_.end()) return it->second;

  long long cls = translation_class(x.lambda);
  ExtWeylElt om = omega_power(cls);
  ExtWeylElt cur = mul(inverse(om), x);
  long long len = length(cur);
  std::vector<size_t> word;
  while (len > 0) {
    bool found = false;
    for (size_t i = 0; i < affine_gens_.size(); ++i) {
      ExtWeylElt nxt = mul(cur, affine_gens_[i]);
      if (length(nxt) == len - 1) {
        word.push_back(i);
        cur = nxt;
        --len;
        found = true;
        break;
      }
    }
    if (!found) {
      throw InternalCheckError("no descent found while factoring");
    }
  }
  if (!(cur == identity())) {
    throw InternalCheckError("length-zero remainder is not the identity");
  }
  std::reverse(word.begin(), word.end());
  auto result = std::make_pair(om, std::move(word));
  word_cache_.emplace(x, result);
  return result;
}

bool AffineWeyl::bruhat_leq(const ExtWeylElt& x, const ExtWeylElt& y) const {
  if (x == y) return true;
  auto key = std::make_pair(x, y);
  auto it = bruhat_cache_.find(key);
  if (it != bruhat_cache_.end()) return it->second;

  bool result = false;
  if (length(x) < length(y)) {
    auto [omx, wx] = omega_and_word(x);
    auto [omy, wy] = omega_and_word(y);
    if (omx == omy) {
      // Greedy subword test: sweep y's reduced word from the right, applying
      // a letter to the residue of x exactly when it shortens it.
      ExtWeylElt cur = mul(inverse(omx), x);
      long long len = length(cur);
      for (auto rit = wy.rbegin(); rit != wy.rend() && len > 0; ++rit) {
        ExtWeylElt nxt = mul(cur, affine_gens_[*rit]);
        long long ln = length(nxt);
        if (ln < len) {
          cur = nxt;
          len = ln;
        }
      }
      result = (len == 0);
    }
  }
  bruhat_cache_.emplace(key, result);
  return result;
}

std::pair<IntVec, IntVec> AffineWeyl::antidominant_difference(
    const IntVec& lambda) const {
  const RootDatum& rd = *datum_;
  size_t n = static_cast<size_t>(rd.rank());
  IntVec v0(n, 0);
  for (const IntVec& cv : rd.positive_coroots()) v0 = sub(v0, cv);
  long long shift = 0;
  for (const IntVec& alpha : rd.simple_roots()) {
    long long pairing = dot(alpha, lambda);
    if (pairing > 0) shift = std::max(shift, (pairing + 1) / 2);
  }
  IntVec mu2(n, 0);
  for (size_t i = 0; i < n; ++i) mu2[i] = shift * v0[i];
  IntVec mu1 = add(lambda, mu2);
  if (!rd.is_antidominant(to_qvec(mu1)) || !rd.is_antidominant(to_qvec(mu2))) {
    throw InternalCheckError("antidominant splitting failed");
  }
  return {mu1, mu2};
}

std::vector<ExtWeylElt> AffineWeyl::double_coset(const IntVec& lambda) const {
  const RootDatum& rd = *datum_;
  if (!rd.is_antidominant(to_qvec(lambda))) {
    throw std::invalid_argument("double cosets are indexed by antidominant "
                                "translations");
  }
  std::set<ExtWeylElt> out;
  ExtWeylElt t = translation(lambda);
  for (size_t u = 0; u < rd.weyl_size(); ++u) {
    ExtWeylElt left = mul(finite(u), t);
    for (size_t v = 0; v < rd.weyl_size(); ++v) {
      out.insert(mul(left, finite(v)));
    }
  }
  return std::vector<ExtWeylElt>(out.begin(), out.end());
}

HeckeElt HeckeElt::tau(const ExtWeylElt& x) {
  HeckeElt h;
  h.add_term(x, Scalar::integer(1));
  return h;
}

Scalar HeckeElt::coefficient(const ExtWeylElt& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? Scalar::zero() : it->second;
}

void HeckeElt::add_term(const ExtWeylElt& x, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(x, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HeckeElt HeckeElt::operator+(const HeckeElt& o) const {
  HeckeElt out = *this;
  for (const auto& [x, c] : o.terms_) out.add_term(x, c);
  return out;
}

HeckeElt HeckeElt::operator-(const HeckeElt& o) const {
  HeckeElt out = *this;
  for (const auto& [x, c] : o.terms_) out.add_term(x, -c);
  return out;
}

HeckeElt HeckeElt::scaled(const Scalar& c) const {
  HeckeElt out;
  if (c.is_zero()) return out;
  for (const auto& [x, coef] : terms_) out.add_term(x, coef * c);
  return out;
}

std::string HeckeElt::str(const AffineWeyl& group) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& weyl = group.datum()->weyl();
  for (const auto& [x, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*tau[w=";
    if (weyl[x.w].word.empty()) {
      os << "e";
    } else {
      for (int i : weyl[x.w].word) os << "s" << i;
    }
    os << ", t=(";
    for (size_t i = 0; i < x.lambda.size(); ++i) {
      if (i) os << ",";
      os << x.lambda[i];
    }
    os << ")]";
  }
  return os.str();
}

namespace {

// h * tau_s for an affine generator s: length-increasing terms move, the
// rest split by the quadratic relation tau_s^2 = (q-1) tau_s + q.
HeckeElt right_mul_gen(const AffineWeyl& group, const HeckeElt& h, size_t i) {
  const ExtWeylElt& s = group.affine_generator(i);
  Scalar q = Scalar::q_pow(rat(1));
  Scalar qm1 = q - Scalar::integer(1);
  HeckeElt out;
  for (const auto& [x, c] : h.terms()) {
    ExtWeylElt xs = group.mul(x, s);
    if (group.length(xs) > group.length(x)) {
      out.add_term(xs, c);
    } else {
      out.add_term(x, c * qm1);
      out.add_term(xs, c * q);
    }
  }
  return out;
}

// h * tau_s^{-1} via tau_s^{-1} = q^{-1} tau_s - (1 - q^{-1}).
HeckeElt right_mul_gen_inverse(const AffineWeyl& group, const HeckeElt& h,
                               size_t i) {
  Scalar qinv = Scalar::q_pow(rat(-1));
  Scalar one = Scalar::integer(1);
  return right_mul_gen(group, h, i).scaled(qinv) - h.scaled(one - qinv);
}

}  // namespace

HeckeElt multiply(const AffineWeyl& group, const HeckeElt& a,
                  const HeckeElt& b) {
  HeckeElt result;
  for (const auto& [y, cy] : b.terms()) {
    auto [om, word] = group.omega_and_word(y);
    HeckeElt h;
    for (const auto& [x, cx] : a.terms()) h.add_term(group.mul(x, om), cx);
    for (size_t i : word) h = right_mul_gen(group, h, i);
    for (const auto& [x, c] : h.terms()) result.add_term(x, c * cy);
  }
  return result;
}

HeckeElt tau_inverse(const AffineWeyl& group, const ExtWeylElt& x) {
  auto [om, word] = group.omega_and_word(x);
  // x = om s_{i_1} ... s_{i_k}, so x^{-1} = s_{i_k}^{-1} ... s_{i_1}^{-1}
  // om^{-1}.
  HeckeElt h = HeckeElt::tau(group.identity());
  for (auto rit = word.rbegin(); rit != word.rend(); ++rit) {
    h = right_mul_gen_inverse(group, h, *rit);
  }
  ExtWeylElt om_inv = group.inverse(om);
  HeckeElt out;
  for (const auto& [z, c] : h.terms()) out.add_term(group.mul(z, om_inv), c);
  return out;
}

HeckeElt theta(const AffineWeyl& group, const ExtWeylElt& x) {
  auto [l1, l2] = group.antidominant_difference(x.lambda);
  long long twice_exp = group.length(x) - group.length(group.finite(x.w)) -
                        group.length(group.translation(l1)) +
                        group.length(group.translation(l2));
  if (twice_exp % 2 != 0) {
    throw InternalCheckError("half-integral exponent in theta");
  }
  HeckeElt res = multiply(
      group, HeckeElt::tau(group.finite(x.w)),
      multiply(group, HeckeElt::tau(group.translation(l1)),
               tau_inverse(group, group.translation(l2))));
  return res.scaled(Scalar::q_pow(rat(static_cast<long>(twice_exp / 2))));
}

HeckeElt bernstein_theta(const AffineWeyl& group, const IntVec& lambda,
                         const QVec& xi) {
  auto [l1, l2] = group.antidominant_difference(lambda);
  HeckeElt res =
      multiply(group, HeckeElt::tau(group.translation(l1)),
               tau_inverse(group, group.translation(l2)));
  return res.scaled(Scalar::pi_pow(-dot(xi, lambda)));
}

std::optional<Rational> norm_xi(const AffineWeyl& group, const HeckeElt& h,
                                const QVec& xi, const FieldInvariants& field) {
  if (h.is_zero()) return std::nullopt;
  const RootDatum& rd = *group.datum();
  std::optional<Rational> best;
  for (const auto& [x, c] : h.terms()) {
    auto v = c.val(field);
    if (!v) continue;
    QVec rep = rd.antidominant_rep(to_qvec(x.lambda)).first;
    Rational r = *v + dot(xi, rep);
    if (!best || r < *best) best = r;
  }
  return best;
}

Scalar poincare_polynomial(const RootDatum& datum) {
  Scalar out = Scalar::zero();
  for (const auto& w : datum.weyl()) {
    out = out + Scalar::q_pow(rat(static_cast<long>(w.word.size())));
  }
  return out;
}

HeckeElt spherical_embed(const AffineWeyl& group, const IntVec& lambda) {
  HeckeElt out;
  for (const auto& x : group.double_coset(lambda)) {
    out.add_term(x, Scalar::integer(1));
  }
  return out;
}

std::map<IntVec, Scalar> spherical_coordinates(const AffineWeyl& group,
                                               const HeckeElt& h) {
  const RootDatum& rd = *group.datum();
  std::map<IntVec, Scalar> coords;
  std::map<IntVec, size_t> seen;
  for (const auto& [x, c] : h.terms()) {
    IntVec rep = to_intvec(rd.antidominant_rep(to_qvec(x.lambda)).first);
    auto [it, inserted] = coords.emplace(rep, c);
    if (!inserted && it->second != c) {
      throw std::invalid_argument(
          "coefficients are not constant on a double coset");
    }
    ++seen[rep];
  }
  for (const auto& [rep, count] : seen) {
    if (count != group.double_coset(rep).size()) {
      throw std::invalid_argument("support misses part of a double coset");
    }
  }
  return coords;
}

bool is_spherical(const AffineWeyl& group, const HeckeElt& h) {
  try {
    spherical_coordinates(group, h);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

HeckeElt spherical_product(const AffineWeyl& group, const HeckeElt& a,
                           const HeckeElt& b) {
  spherical_coordinates(group, a);
  spherical_coordinates(group, b);
  Scalar poincare = poincare_polynomial(*group.datum());
  HeckeElt raw = multiply(group, a, b);
  HeckeElt out;
  for (const auto& [x, c] : raw.terms()) {
    out.add_term(x, c.divide_exact_by_q_poly(poincare));
  }
  return out;
}

bool check_prop44(const AffineWeyl& group, const HeckeElt& h, const QVec& xi,
                  const FieldInvariants& field,
                  const CoefficientSource& coeffs) {
  auto coords = spherical_coordinates(group, h);

  CocycleSpec spec;
  spec.datum = group.datum();
  spec.xi = xi;
  spec.field = field;
  spec.variant = Variant::gamma_xi;
  spec.validate();

  SphericalElt sph;
  sph.coeffs = coords;
  GroupRingElt z = satake_transform(sph, spec, coeffs);

  HeckeElt image;
  for (const auto& [lam, c] : z.terms()) {
    image = image + bernstein_theta(group, lam, xi).scaled(c);
  }

  // The lattice image of an invariant element must be central.
  for (size_t i = 0; i < group.num_affine_generators(); ++i) {
    HeckeElt gen = HeckeElt::tau(group.affine_generator(i));
    if (multiply(group, image, gen) != multiply(group, gen, image)) {
      return false;
    }
  }
  if (group.omega_generator()) {
    HeckeElt om = HeckeElt::tau(*group.omega_generator());
    if (multiply(group, image, om) != multiply(group, om, image)) {
      return false;
    }
  }

  // Convolving with the identity double coset recovers h.
  IntVec origin(static_cast<size_t>(group.datum()->rank()), 0);
  HeckeElt recovered = multiply(group, spherical_embed(group, origin), image);
  HeckeElt expected;
  for (const auto& [lam, c] : coords) {
    expected = expected + spherical_embed(group, lam).scaled(c);
  }
  return recovered == expected;
}

}  // namespace pht
