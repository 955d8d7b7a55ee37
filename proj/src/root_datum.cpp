#include "pht/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace pht {

namespace {

constexpr size_t kWeylCap = 10000;

IntVec mat_mul(const IntVec& a, const IntVec& b, int n) {
  IntVec out(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long v = a[i * n + k];
      if (v == 0) continue;
      for (int j = 0; j < n; ++j) out[i * n + j] += v * b[k * n + j];
    }
  return out;
}

IntVec mat_identity(int n) {
  IntVec out(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) out[i * n + i] = 1;
  return out;
}

template <typename T>
std::vector<T> mat_apply(const IntVec& m, const std::vector<T>& v, int n) {
  std::vector<T> out(n, T(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i * n + j] != 0) out[i] += T(static_cast<long>(m[i * n + j])) * v[j];
  return out;
}

IntVec mat_apply_int(const IntVec& m, const IntVec& v, int n) {
  IntVec out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
  return out;
}

}  // namespace

void RootDatum::build(const std::vector<IntVec>& simple_roots,
                      const std::vector<IntVec>& simple_coroots) {
  if (simple_roots.size() != simple_coroots.size())
    throw std::invalid_argument("simple roots/coroots size mismatch");
  if (simple_roots.empty()) throw std::invalid_argument("need at least one simple root");
  rank_ = static_cast<int>(simple_roots[0].size());
  for (const auto& r : simple_roots)
    if (static_cast<int>(r.size()) != rank_) throw std::invalid_argument("dimension mismatch");
  for (const auto& r : simple_coroots)
    if (static_cast<int>(r.size()) != rank_) throw std::invalid_argument("dimension mismatch");
  simple_roots_ = simple_roots;
  simple_coroots_ = simple_coroots;

  size_t s = simple_roots_.size();
  for (size_t i = 0; i < s; ++i) {
    if (dot(simple_roots_[i], simple_coroots_[i]) != 2)
      throw std::invalid_argument("pairing <alpha_i, alpha_i^vee> must be 2");
    for (size_t j = 0; j < s; ++j)
      if (i != j && dot(simple_roots_[i], simple_coroots_[j]) > 0)
        throw std::invalid_argument("Cartan matrix has positive off-diagonal entry");
  }

  // Simple reflections on cocharacters: s_i = I - coroot_i (x) root_i.
  int n = rank_;
  std::vector<IntVec> refl(s);
  for (size_t i = 0; i < s; ++i) {
    IntVec m = mat_identity(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        m[r * n + c] -= simple_coroots_[i][r] * simple_roots_[i][c];
    refl[i] = m;
  }

  std::map<IntVec, size_t> index;
  weyl_.clear();
  weyl_.push_back({mat_identity(n), mat_identity(n), {}});
  index[weyl_[0].cochar_mat] = 0;
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < s; ++i) {
      IntVec m = mat_mul(refl[i], weyl_[cur].cochar_mat, n);
      if (index.count(m)) continue;
      if (weyl_.size() >= kWeylCap)
        throw std::invalid_argument("Weyl group too large or not finite");
      WeylElt e;
      e.cochar_mat = m;
      // Reflections are involutions, so the char action of s_i is the
      // transpose of its cochar action; compose along the word.
      IntVec refl_t(static_cast<size_t>(n) * n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) refl_t[r * n + c] = refl[i][c * n + r];
      e.char_mat = mat_mul(refl_t, weyl_[cur].char_mat, n);
      e.word = {static_cast<int>(i)};
      e.word.insert(e.word.end(), weyl_[cur].word.begin(), weyl_[cur].word.end());
      index[m] = weyl_.size();
      queue.push_back(weyl_.size());
      weyl_.push_back(std::move(e));
    }
  }

  // Root system by reflection closure of the (root, coroot) pairs.
  std::map<IntVec, IntVec> root_to_coroot;
  std::deque<std::pair<IntVec, IntVec>> rq;
  for (size_t i = 0; i < s; ++i) {
    root_to_coroot[simple_roots_[i]] = simple_coroots_[i];
    rq.emplace_back(simple_roots_[i], simple_coroots_[i]);
  }
  while (!rq.empty()) {
    auto [beta, beta_v] = rq.front();
    rq.pop_front();
    for (size_t i = 0; i < s; ++i) {
      long long pr = dot(simple_roots_[i], beta_v);
      IntVec nb = beta;
      IntVec nbv = beta_v;
      long long pc = dot(beta, simple_coroots_[i]);
      for (int j = 0; j < n; ++j) {
        nb[j] -= pc * simple_roots_[i][j];
        nbv[j] -= pr * simple_coroots_[i][j];
      }
      if (!root_to_coroot.count(nb)) {
        root_to_coroot[nb] = nbv;
        rq.emplace_back(nb, nbv);
      }
    }
  }

  // A root is positive when its expansion over the simple roots is >= 0.
  QMatrix basis(static_cast<size_t>(n), s);
  for (size_t j = 0; j < s; ++j)
    for (int i = 0; i < n; ++i) basis.at(i, j) = Rational(static_cast<long>(simple_roots_[j][i]));
  QMatrix gram(s, s);
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      Rational g = 0;
      for (int k = 0; k < n; ++k)
        g += Rational(static_cast<long>(simple_roots_[i][k])) * Rational(static_cast<long>(simple_roots_[j][k]));
      gram.at(i, j) = g;
    }
  QMatrix gram_inv = gram.inverse();
  for (const auto& [beta, beta_v] : root_to_coroot) {
    QVec rhs(s, Rational(0));
    for (size_t i = 0; i < s; ++i)
      for (int k = 0; k < n; ++k)
        rhs[i] += Rational(static_cast<long>(simple_roots_[i][k])) * Rational(static_cast<long>(beta[k]));
    QVec coeff = gram_inv.apply(rhs);
    QVec check = basis.apply(coeff);
    for (int k = 0; k < n; ++k)
      if (check[k] != Rational(static_cast<long>(beta[k])))
        throw std::logic_error("root outside simple-root span");
    bool nonneg = true, nonpos = true;
    for (const auto& c : coeff) {
      if (c < 0) nonneg = false;
      if (c > 0) nonpos = false;
    }
    if (nonneg == nonpos) throw std::logic_error("root with mixed signs");
    if (nonneg) {
      positive_roots_.push_back(beta);
      positive_coroots_.push_back(beta_v);
    }
  }

  eta_.assign(n, Rational(0));
  for (const auto& b : positive_roots_)
    for (int i = 0; i < n; ++i) eta_[i] += rat(static_cast<long>(b[i]), 2);

  // Irreducibility: connectivity of the Cartan graph.
  std::vector<bool> seen(s, false);
  std::deque<size_t> cq{0};
  seen[0] = true;
  while (!cq.empty()) {
    size_t i = cq.front();
    cq.pop_front();
    for (size_t j = 0; j < s; ++j)
      if (!seen[j] && dot(simple_roots_[i], simple_coroots_[j]) != 0) {
        seen[j] = true;
        cq.push_back(j);
      }
  }
  irreducible_ = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  if (irreducible_) {
    // Highest root: maximal height, unique in an irreducible system.
    long best = -1;
    for (size_t idx = 0; idx < positive_roots_.size(); ++idx) {
      QVec rhs(s, Rational(0));
      for (size_t i = 0; i < s; ++i)
        for (int k = 0; k < n; ++k)
          rhs[i] += Rational(static_cast<long>(simple_roots_[i][k])) *
                    Rational(static_cast<long>(positive_roots_[idx][k]));
      QVec coeff = gram_inv.apply(rhs);
      Rational h = 0;
      for (const auto& c : coeff) h += c;
      long hl = static_cast<long>(to_ll(h * Rational(2)));  // heights in (1/2)Z safety
      if (hl > best) {
        best = hl;
        highest_root_ = positive_roots_[idx];
        highest_coroot_ = positive_coroots_[idx];
      }
    }
  }
}

std::shared_ptr<const RootDatum> RootDatum::gl(int n) {
  if (n < 1) throw std::invalid_argument("GL(n) needs n >= 1");
  if (n == 1) {
    // Torus case: no roots, trivial Weyl group.
    auto d = std::shared_ptr<RootDatum>(new RootDatum());
    d->rank_ = 1;
    d->weyl_.push_back({mat_identity(1), mat_identity(1), {}});
    d->eta_.assign(1, Rational(0));
    d->name_ = "GL1";
    d->gl_n_ = 1;
    return d;
  }
  std::vector<IntVec> roots, coroots;
  for (int i = 0; i + 1 < n; ++i) {
    IntVec a(n, 0);
    a[i] = -1;
    a[i + 1] = 1;
    roots.push_back(a);
    coroots.push_back(a);
  }
  auto d = std::shared_ptr<RootDatum>(new RootDatum());
  d->build(roots, coroots);
  d->name_ = "GL" + std::to_string(n);
  d->gl_n_ = n;
  return d;
}

std::shared_ptr<const RootDatum> RootDatum::pgl2() {
  auto d = std::shared_ptr<RootDatum>(new RootDatum());
  d->build({{1}}, {{2}});
  d->name_ = "PGL2";
  return d;
}

std::shared_ptr<const RootDatum> RootDatum::custom(
    const std::vector<IntVec>& simple_roots,
    const std::vector<IntVec>& simple_coroots, const std::string& name) {
  auto d = std::shared_ptr<RootDatum>(new RootDatum());
  d->build(simple_roots, simple_coroots);
  d->name_ = name.empty() ? "custom" : name;
  return d;
}

size_t RootDatum::weyl_mul(size_t a, size_t b) const {
  IntVec m = mat_mul(weyl_[a].cochar_mat, weyl_[b].cochar_mat, rank_);
  for (size_t i = 0; i < weyl_.size(); ++i)
    if (weyl_[i].cochar_mat == m) return i;
  throw std::logic_error("product left the Weyl group");
}

size_t RootDatum::weyl_inverse(size_t a) const {
  IntVec id = mat_identity(rank_);
  for (size_t i = 0; i < weyl_.size(); ++i)
    if (mat_mul(weyl_[a].cochar_mat, weyl_[i].cochar_mat, rank_) == id) return i;
  throw std::logic_error("missing inverse");
}

size_t RootDatum::simple_reflection(int i) const {
  for (size_t w = 0; w < weyl_.size(); ++w)
    if (weyl_[w].word.size() == 1 && weyl_[w].word[0] == i) return w;
  throw std::invalid_argument("no such simple reflection");
}

QVec RootDatum::act_cochar(size_t w, const QVec& v) const {
  return mat_apply<Rational>(weyl_[w].cochar_mat, v, rank_);
}

IntVec RootDatum::act_cochar(size_t w, const IntVec& v) const {
  return mat_apply_int(weyl_[w].cochar_mat, v, rank_);
}

QVec RootDatum::act_char(size_t w, const QVec& v) const {
  return mat_apply<Rational>(weyl_[w].char_mat, v, rank_);
}

const IntVec& RootDatum::highest_root() const {
  if (!irreducible_)
    throw std::invalid_argument("highest root needs an irreducible system");
  return highest_root_;
}

const IntVec& RootDatum::highest_coroot() const {
  if (!irreducible_)
    throw std::invalid_argument("highest root needs an irreducible system");
  return highest_coroot_;
}

std::vector<std::pair<size_t, QVec>> RootDatum::weyl_orbit(const QVec& v) const {
  std::vector<std::pair<size_t, QVec>> out;
  std::set<QVec> seen;
  std::deque<size_t> queue;
  out.emplace_back(weyl_identity(), v);
  seen.insert(v);
  queue.push_back(0);
  while (!queue.empty()) {
    size_t at = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < simple_roots_.size(); ++i) {
      size_t si = simple_reflection(static_cast<int>(i));
      QVec nx = act_cochar(si, out[at].second);
      if (seen.count(nx)) continue;
      seen.insert(nx);
      out.emplace_back(weyl_mul(si, out[at].first), nx);
      queue.push_back(out.size() - 1);
    }
  }
  return out;
}

bool RootDatum::is_antidominant(const QVec& lambda) const {
  for (const auto& a : simple_roots_)
    if (dot(to_qvec(a), lambda) > 0) return false;
  return true;
}

bool RootDatum::is_dominant_char(const QVec& z) const {
  for (const auto& av : simple_coroots_)
    if (dot(z, av) < 0) return false;
  return true;
}

std::pair<QVec, size_t> RootDatum::antidominant_rep(const QVec& v) const {
  QVec x = v;
  size_t w = weyl_identity();
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i < simple_roots_.size(); ++i) {
      if (dot(to_qvec(simple_roots_[i]), x) > 0) {
        size_t si = simple_reflection(static_cast<int>(i));
        x = act_cochar(si, x);
        w = weyl_mul(si, w);
        moved = true;
      }
    }
  }
  return {x, w};
}

QVec RootDatum::dominant_rearrange(const QVec& z) const {
  QVec x = z;
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i < simple_coroots_.size(); ++i) {
      if (dot(x, simple_coroots_[i]) < 0) {
        x = act_char(simple_reflection(static_cast<int>(i)), x);
        moved = true;
      }
    }
  }
  return x;
}

bool RootDatum::leq_dominance(const QVec& z, const QVec& z2) const {
  if (static_cast<int>(z.size()) != rank_ || static_cast<int>(z2.size()) != rank_)
    throw std::invalid_argument("dimension mismatch");
  if (is_gl()) {
    Rational suffix = 0, suffix2 = 0;
    for (int i = rank_ - 1; i > 0; --i) {
      suffix += z[i];
      suffix2 += z2[i];
      if (suffix > suffix2) return false;
    }
    suffix += z[0];
    suffix2 += z2[0];
    return suffix == suffix2;
  }
  return leq_dominance_lp(z, z2);
}

bool RootDatum::leq_dominance_lp(const QVec& z, const QVec& z2) const {
  std::vector<QVec> rays;
  for (const auto& r : positive_roots_) rays.push_back(to_qvec(r));
  return in_cone(rays, sub(z2, z));
}

bool RootDatum::leq_lambda(const QVec& lambda, const QVec& mu) const {
  if (static_cast<int>(lambda.size()) != rank_ || static_cast<int>(mu.size()) != rank_)
    throw std::invalid_argument("dimension mismatch");
  if (is_gl()) {
    Rational pa = 0, pb = 0;
    for (int i = 0; i + 1 < rank_; ++i) {
      pa += lambda[i];
      pb += mu[i];
      if (pa > pb || !is_integer(pb - pa)) return false;
    }
    pa += lambda[rank_ - 1];
    pb += mu[rank_ - 1];
    return pa == pb;
  }
  // mu - lambda must be a nonnegative *integer* combination of negated
  // simple coroots; those form a basis of the coroot lattice, so solve for
  // the unique coefficient vector and check it.
  QVec v = sub(mu, lambda);
  size_t s = simple_coroots_.size();
  QMatrix a(static_cast<size_t>(rank_), s);
  for (size_t j = 0; j < s; ++j)
    for (int i = 0; i < rank_; ++i)
      a.at(i, j) = rat(static_cast<long>(-simple_coroots_[j][i]));
  QMatrix gram(s, s);
  QVec rhs(s, Rational(0));
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = 0; j < s; ++j) {
      Rational g = 0;
      for (int k = 0; k < rank_; ++k) g += a.at(k, i) * a.at(k, j);
      gram.at(i, j) = g;
    }
    for (int k = 0; k < rank_; ++k) rhs[i] += a.at(k, i) * v[k];
  }
  QVec coeff = gram.inverse().apply(rhs);
  QVec check = a.apply(coeff);
  for (int k = 0; k < rank_; ++k)
    if (check[k] != v[k]) return false;
  for (const auto& c : coeff)
    if (c < 0 || !is_integer(c)) return false;
  return true;
}

std::vector<IntVec> RootDatum::antidominant_generators() const {
  if (is_gl()) {
    std::vector<IntVec> gens;
    for (int i = 1; i <= gl_n_; ++i) {
      IntVec g(gl_n_, 0);
      for (int j = 0; j < i; ++j) g[j] = 1;
      gens.push_back(g);
    }
    gens.push_back(IntVec(gl_n_, -1));
    return gens;
  }
  if (name_ == "PGL2") return {IntVec{-1}};

  // Bounded search: lattice points of the antidominant cone in a box,
  // greedily minimized, then checked to generate a test box.
  const long long B = 5;
  std::vector<IntVec> pool;
  IntVec pt(rank_, -B);
  while (true) {
    QVec q = to_qvec(pt);
    bool zero = std::all_of(pt.begin(), pt.end(), [](long long x) { return x == 0; });
    if (!zero && is_antidominant(q)) pool.push_back(pt);
    int i = 0;
    for (; i < rank_; ++i) {
      if (pt[i] < B) {
        ++pt[i];
        break;
      }
      pt[i] = -B;
    }
    if (i == rank_) break;
  }
  std::sort(pool.begin(), pool.end(), [](const IntVec& a, const IntVec& b) {
    long long na = 0, nb = 0;
    for (auto x : a) na += x < 0 ? -x : x;
    for (auto x : b) nb += x < 0 ? -x : x;
    if (na != nb) return na < nb;
    return a < b;
  });

  std::vector<IntVec> gens;
  std::function<bool(const IntVec&, std::set<IntVec>&)> representable =
      [&](const IntVec& x, std::set<IntVec>& visiting) -> bool {
    bool zero = std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
    if (zero) return true;
    long long norm = 0;
    for (auto v : x) norm += v < 0 ? -v : v;
    if (norm > 8 * B * rank_) return false;
    if (visiting.count(x)) return false;
    visiting.insert(x);
    for (const auto& g : gens) {
      IntVec rest = sub(x, g);
      if (representable(rest, visiting)) return true;
    }
    return false;
  };
  for (const auto& cand : pool) {
    std::set<IntVec> visiting;
    if (!representable(cand, visiting)) gens.push_back(cand);
  }

  // Verification over a small box; failure means the search bound is too low.
  IntVec t(rank_, -3);
  while (true) {
    QVec q = to_qvec(t);
    if (is_antidominant(q)) {
      std::set<IntVec> visiting;
      if (!representable(t, visiting))
        throw std::runtime_error("generator search bound exceeded");
    }
    int i = 0;
    for (; i < rank_; ++i) {
      if (t[i] < 3) {
        ++t[i];
        break;
      }
      t[i] = -3;
    }
    if (i == rank_) break;
  }
  return gens;
}

std::vector<IntVec> RootDatum::antidominant_lower_set(const IntVec& lambda) const {
  std::vector<IntVec> out;
  if (is_gl()) {
    int n = gl_n_;
    long long total = 0;
    for (auto x : lambda) total += x;
    IntVec prefix(n, 0);
    long long acc = 0;
    for (int i = 0; i < n; ++i) {
      acc += lambda[i];
      prefix[i] = acc;
    }
    IntVec cur(n, 0);
    std::function<void(int, long long, long long)> rec = [&](int k, long long sum,
                                                             long long prev) {
      if (k == n - 1) {
        long long last = total - sum;
        if (last <= prev) {
          cur[k] = last;
          out.push_back(cur);
        }
        return;
      }
      // Decreasing tail forces mu_k >= ceil(remaining / slots).
      long long slots = n - k;
      long long remaining = total - sum;
      long long lo = remaining >= 0 ? (remaining + slots - 1) / slots
                                    : -((-remaining) / slots);
      while (lo * slots < remaining) ++lo;
      long long hi = std::min(prev, prefix[k] - sum);
      for (long long v = lo; v <= hi; ++v) {
        cur[k] = v;
        rec(k + 1, sum + v, v);
      }
    };
    rec(0, 0, std::numeric_limits<long long>::max() / 4);
    return out;
  }
  long long bound = 1;
  for (auto x : lambda) bound += (x < 0 ? -x : x);
  bound += 3;
  IntVec t(rank_, -bound);
  QVec lam_q = to_qvec(lambda);
  while (true) {
    QVec q = to_qvec(t);
    if (is_antidominant(q) && leq_lambda(q, lam_q)) out.push_back(t);
    int i = 0;
    for (; i < rank_; ++i) {
      if (t[i] < bound) {
        ++t[i];
        break;
      }
      t[i] = -bound;
    }
    if (i == rank_) break;
  }
  return out;
}

RootDatumPtr root_datum_by_name(const std::string& name) {
  if (name == "PGL2") return RootDatum::pgl2();
  if (name.rfind("GL", 0) == 0) {
    int n = std::stoi(name.substr(2));
    return RootDatum::gl(n);
  }
  throw std::invalid_argument("unknown root datum: " + name);
}

}  // namespace pht
