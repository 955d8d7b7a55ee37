#include "pht/isocrystal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pht/cocycle.hpp"
#include "pht/errors.hpp"
#include "pht/polygon.hpp"

namespace pht {

long long FrobeniusSpec::dimension() const {
  long long n = 0;
  for (const auto& b : blocks)
    for (long long part : b.jordan) n += part;
  return n;
}

void FrobeniusSpec::validate() const {
  if (blocks.empty()) throw std::invalid_argument("empty Frobenius data");
  std::set<std::string> labels;
  for (const auto& b : blocks) {
    if (b.label.empty()) throw std::invalid_argument("empty eigenvalue label");
    if (!labels.insert(b.label).second)
      throw std::invalid_argument("duplicate eigenvalue label: " + b.label);
    if (b.jordan.empty())
      throw std::invalid_argument("empty Jordan partition for " + b.label);
    for (long long part : b.jordan)
      if (part < 1)
        throw std::invalid_argument("nonpositive Jordan part for " + b.label);
  }
}

std::vector<JordanCell> jordan_cells(const FrobeniusSpec& fr) {
  std::vector<JordanCell> cells;
  size_t off = 0;
  for (size_t bi = 0; bi < fr.blocks.size(); ++bi) {
    for (long long part : fr.blocks[bi].jordan) {
      cells.push_back({bi, off, static_cast<size_t>(part)});
      off += static_cast<size_t>(part);
    }
  }
  return cells;
}

std::vector<size_t> Flag::step_dims() const {
  std::vector<size_t> dims;
  dims.reserve(bases.size());
  for (const auto& basis : bases) dims.push_back(rank(QMatrix::from_rows(basis)));
  return dims;
}

void Flag::validate(size_t ambient_dim) const {
  if (jumps.empty()) throw std::invalid_argument("flag has no jumps");
  if (jumps.size() != bases.size())
    throw std::invalid_argument("flag jump/step count mismatch");
  for (size_t i = 1; i < jumps.size(); ++i)
    if (!(jumps[i - 1] < jumps[i]))
      throw std::invalid_argument("flag jumps must strictly increase");
  for (const auto& basis : bases) {
    if (basis.empty()) throw std::invalid_argument("empty flag step");
    for (const auto& v : basis)
      if (v.size() != ambient_dim)
        throw std::invalid_argument("flag vector has wrong dimension");
  }
  const auto dims = step_dims();
  if (dims.front() != ambient_dim)
    throw std::invalid_argument("first flag step must be the full space");
  for (size_t i = 1; i < dims.size(); ++i) {
    if (!(dims[i] < dims[i - 1]))
      throw std::invalid_argument("flag step ranks must strictly decrease");
    if (intersect_dim(bases[i - 1], bases[i]) != dims[i])
      throw std::invalid_argument("flag steps are not nested");
  }
  if (dims.back() == 0)
    throw std::invalid_argument("last flag step must be nonzero");
}

void FilteredIsocrystal::validate() const {
  frobenius.validate();
  field.validate();
  flag.validate(static_cast<size_t>(frobenius.dimension()));
}

QVec filtration_type(const FilteredIsocrystal& D) {
  const auto dims = D.flag.step_dims();
  QVec type;
  for (size_t j = 0; j < dims.size(); ++j) {
    const size_t next = (j + 1 < dims.size()) ? dims[j + 1] : 0;
    for (size_t k = next; k < dims[j]; ++k) type.push_back(D.flag.jumps[j]);
  }
  return type;  // increasing: jumps increase, each repeated dim gr times
}

std::vector<CoordSubspace> invariant_subspaces(const FrobeniusSpec& fr) {
  fr.validate();
  for (const auto& b : fr.blocks)
    if (b.jordan.size() >= 2)
      throw InfiniteFamilyError(
          "eigenvalue " + b.label +
          " has several Jordan blocks: infinite family of invariant "
          "subspaces");
  const auto cells = jordan_cells(fr);
  std::vector<CoordSubspace> out;
  std::vector<size_t> prefix(cells.size(), 0);
  for (;;) {
    CoordSubspace sub;
    for (size_t c = 0; c < cells.size(); ++c)
      for (size_t j = 0; j < prefix[c]; ++j) sub.push_back(cells[c].offset + j);
    std::sort(sub.begin(), sub.end());
    out.push_back(std::move(sub));
    size_t c = 0;
    while (c < cells.size() && prefix[c] == cells[c].size) prefix[c++] = 0;
    if (c == cells.size()) break;
    ++prefix[c];
  }
  return out;
}

namespace {

std::vector<QVec> coordinate_vectors(const CoordSubspace& sub, size_t n) {
  std::vector<QVec> vecs;
  vecs.reserve(sub.size());
  for (size_t idx : sub) {
    QVec v(n, rat(0));
    v.at(idx) = rat(1);
    vecs.push_back(std::move(v));
  }
  return vecs;
}

// Check that `sub` is a union of cell prefixes of fr's Jordan basis.
void require_invariant(const FrobeniusSpec& fr, const CoordSubspace& sub) {
  const size_t n = static_cast<size_t>(fr.dimension());
  std::vector<bool> in(n, false);
  for (size_t idx : sub) {
    if (idx >= n) throw std::invalid_argument("coordinate index out of range");
    if (in[idx]) throw std::invalid_argument("repeated coordinate index");
    in[idx] = true;
  }
  for (const auto& cell : jordan_cells(fr)) {
    bool ended = false;
    for (size_t j = 0; j < cell.size; ++j) {
      const bool present = in[cell.offset + j];
      if (ended && present)
        throw std::invalid_argument(
            "subspace is not Frobenius-invariant (gap inside a Jordan cell)");
      if (!present) ended = true;
    }
  }
}

}  // namespace

Rational t_H(const FilteredIsocrystal& D, const CoordSubspace& sub) {
  const size_t n = static_cast<size_t>(D.frobenius.dimension());
  const auto vecs = coordinate_vectors(sub, n);
  Rational total = 0;
  // Each step contributes jump * (induced dim here - induced dim above).
  std::vector<size_t> induced(D.flag.bases.size());
  for (size_t j = 0; j < D.flag.bases.size(); ++j)
    induced[j] = sub.empty() ? 0 : intersect_dim(D.flag.bases[j], vecs);
  for (size_t j = 0; j < D.flag.bases.size(); ++j) {
    const size_t next = (j + 1 < D.flag.bases.size()) ? induced[j + 1] : 0;
    total += D.flag.jumps[j] * rat(static_cast<long>(induced[j] - next));
  }
  return total;
}

Rational t_N_L(const FrobeniusSpec& fr, const CoordSubspace& sub) {
  require_invariant(fr, sub);
  Rational total = 0;
  const auto cells = jordan_cells(fr);
  std::vector<const FrobeniusBlock*> owner(
      static_cast<size_t>(fr.dimension()));
  for (const auto& cell : cells)
    for (size_t j = 0; j < cell.size; ++j)
      owner[cell.offset + j] = &fr.blocks[cell.block_index];
  for (size_t idx : sub) total += owner[idx]->valuation;
  return total;
}

AdmissibilityReport is_weakly_admissible(const FilteredIsocrystal& D) {
  D.validate();
  AdmissibilityReport rep;
  const auto subs = invariant_subspaces(D.frobenius);
  const size_t n = static_cast<size_t>(D.frobenius.dimension());

  CoordSubspace full(n);
  for (size_t i = 0; i < n; ++i) full[i] = i;
  rep.t_H_full = t_H(D, full);
  rep.t_N_full = t_N_L(D.frobenius, full);
  if (rep.t_H_full != rep.t_N_full) {
    rep.admissible = false;
    rep.violator = full;
    return rep;
  }
  for (const auto& sub : subs) {
    if (sub.empty() || sub.size() == n) continue;
    if (t_H(D, sub) > t_N_L(D.frobenius, sub)) {
      rep.admissible = false;
      rep.violator = sub;
      return rep;
    }
  }
  rep.admissible = true;
  return rep;
}

namespace {

// Group labeled valuations into Frobenius blocks (one Jordan block per
// distinct label, in first-appearance order); equal labels must carry equal
// valuations.
FrobeniusSpec frobenius_of_labels(const std::vector<LabeledValuation>& zeta) {
  FrobeniusSpec fr;
  for (const auto& lv : zeta) {
    auto it = std::find_if(fr.blocks.begin(), fr.blocks.end(),
                           [&](const FrobeniusBlock& b) {
                             return b.label == lv.label;
                           });
    if (it == fr.blocks.end()) {
      fr.blocks.push_back({lv.label, lv.valuation, {1}});
    } else {
      if (it->valuation != lv.valuation)
        throw std::invalid_argument(
            "label " + lv.label + " carries two different valuations");
      it->jordan[0] += 1;
    }
  }
  fr.validate();
  return fr;
}

// The filtration type xi_i + (i-1)*e*f in increasing order.
QVec hodge_type(const QVec& xi, const FieldInvariants& field) {
  QVec type(xi.size());
  for (size_t i = 0; i < xi.size(); ++i)
    type[i] = xi[i] + rat(static_cast<long>(i) * field.ef());
  return type;
}

Flag vandermonde_flag(const QVec& type, size_t n, long base) {
  Flag flag;
  // Distinct jumps with graded dimensions, increasing.
  std::vector<std::pair<Rational, size_t>> groups;
  for (const auto& b : type) {
    if (!groups.empty() && groups.back().first == b)
      groups.back().second += 1;
    else
      groups.emplace_back(b, 1);
  }
  std::vector<QVec> vander;
  for (size_t k = 0; k < n; ++k) {
    QVec v(n);
    Rational t = rat(base + static_cast<long>(k));
    Rational pow = 1;
    for (size_t i = 0; i < n; ++i) {
      v[i] = pow;
      pow *= t;
    }
    vander.push_back(std::move(v));
  }
  size_t remaining = n;
  for (const auto& [jump, mult] : groups) {
    flag.jumps.push_back(jump);
    flag.bases.emplace_back(vander.begin(), vander.begin() + remaining);
    remaining -= mult;
  }
  return flag;
}

std::string polygon_witness(const Polygon& newton, const Polygon& hodge) {
  std::ostringstream os;
  os << "eigenvalue polygon heights";
  for (const auto& h : newton.heights) os << " " << rational_string(h);
  os << " do not lie above filtration polygon heights";
  for (const auto& h : hodge.heights) os << " " << rational_string(h);
  os << " with equal endpoint";
  return os.str();
}

}  // namespace

FilteredIsocrystal construct_admissible(
    const std::vector<LabeledValuation>& zeta, const QVec& xi,
    const FieldInvariants& field) {
  field.validate();
  if (zeta.empty()) throw std::invalid_argument("no eigenvalue data");
  if (xi.size() != zeta.size())
    throw std::invalid_argument("weight and eigenvalue counts differ");
  for (size_t i = 1; i < xi.size(); ++i)
    if (xi[i] < xi[i - 1])
      throw std::invalid_argument("weight must be weakly increasing");

  const size_t n = zeta.size();
  QVec vals;
  for (const auto& lv : zeta) vals.push_back(lv.valuation);
  std::sort(vals.begin(), vals.end());
  const QVec type = hodge_type(xi, field);

  const Polygon newton = polygon_of(vals);
  const Polygon hodge = polygon_of(type);
  if (!newton_above_hodge(newton, hodge))
    throw NoAdmissibleFiltration(polygon_witness(newton, hodge));

  FilteredIsocrystal D;
  D.frobenius = frobenius_of_labels(zeta);
  D.field = field;
  for (long base = 1; base <= 1 + 5 * static_cast<long>(n); base += n) {
    D.flag = vandermonde_flag(type, n, base);
    if (is_weakly_admissible(D).admissible) return D;
  }
  throw InternalCheckError(
      "inside the admissible domain but every generic filtration failed");
}

std::vector<HNStep> hn_filtration(const FilteredIsocrystal& D) {
  D.validate();
  const auto subs = invariant_subspaces(D.frobenius);
  const size_t n = static_cast<size_t>(D.frobenius.dimension());

  std::vector<HNStep> chain;
  CoordSubspace cur;
  Rational cur_th = 0, cur_tn = 0;
  std::optional<Rational> prev_slope;
  while (cur.size() < n) {
    std::optional<Rational> best_slope;
    const CoordSubspace* best = nullptr;
    Rational best_th, best_tn;
    for (const auto& sub : subs) {
      if (sub.size() <= cur.size()) continue;
      if (!std::includes(sub.begin(), sub.end(), cur.begin(), cur.end()))
        continue;
      const Rational th = t_H(D, sub);
      const Rational tn = t_N_L(D.frobenius, sub);
      const Rational slope =
          ((th - cur_th) - (tn - cur_tn)) /
          rat(static_cast<long>(sub.size() - cur.size()));
      if (!best_slope || slope > *best_slope ||
          (slope == *best_slope && sub.size() > best->size())) {
        best_slope = slope;
        best = &sub;
        best_th = th;
        best_tn = tn;
      }
    }
    if (!best) throw InternalCheckError("no extension step found");
    if (prev_slope && !(*best_slope < *prev_slope))
      throw InternalCheckError("slope filtration failed to decrease");
    chain.push_back({*best, *best_slope});
    prev_slope = best_slope;
    cur = *best;
    cur_th = best_th;
    cur_tn = best_tn;
  }
  return chain;
}

GL2Classification gl2_classify(const QVec& xi,
                               const std::vector<LabeledValuation>& zeta,
                               bool semisimple,
                               const FieldInvariants& field) {
  field.validate();
  if (xi.size() != 2 || zeta.size() != 2)
    throw std::invalid_argument("rank-2 classification needs two entries");
  if (xi[1] < xi[0])
    throw std::invalid_argument("weight must be weakly increasing");
  for (const auto& c : xi)
    if (!is_integer(c)) throw std::invalid_argument("weight must be integral");

  QVec vals = {zeta[0].valuation, zeta[1].valuation};
  std::sort(vals.begin(), vals.end());
  const QVec type = hodge_type(xi, field);
  if (!newton_above_hodge(polygon_of(vals), polygon_of(type)))
    throw std::invalid_argument(
        "eigenvalue valuations lie outside the admissible domain");

  FrobeniusSpec fr;
  int case_number;
  if (!semisimple) {
    if (zeta[0].label != zeta[1].label ||
        zeta[0].valuation != zeta[1].valuation)
      throw std::invalid_argument(
          "a non-semisimple Frobenius has a single eigenvalue");
    fr.blocks.push_back({zeta[0].label, zeta[0].valuation, {2}});
    case_number = 3;
  } else {
    if (zeta[0].label == zeta[1].label)
      fr.blocks.push_back(
          {zeta[0].label, zeta[0].valuation, {1, 1}});  // infinite family
    else {
      fr.blocks.push_back({zeta[0].label, zeta[0].valuation, {1}});
      fr.blocks.push_back({zeta[1].label, zeta[1].valuation, {1}});
    }
    case_number = (vals[0] == type[0]) ? 1 : 2;
  }
  // Refuse the scalar semisimple case up front (continuum of lines).
  invariant_subspaces(fr);

  // Candidate filtration-line classes: coordinate lines and one generic line.
  std::vector<QVec> lines;
  if (semisimple) {
    lines.push_back(QVec{rat(1), rat(0)});
    lines.push_back(QVec{rat(0), rat(1)});
  } else {
    lines.push_back(QVec{rat(1), rat(0)});  // the unique invariant line
  }
  lines.push_back(QVec{rat(1), rat(1)});  // generic

  int count = 0;
  for (const auto& line : lines) {
    FilteredIsocrystal D;
    D.frobenius = fr;
    D.field = field;
    D.flag.jumps = {type[0], type[1]};
    D.flag.bases = {{QVec{rat(1), rat(0)}, QVec{rat(0), rat(1)}}, {line}};
    if (is_weakly_admissible(D).admissible) ++count;
  }
  return {case_number, count};
}

LIsocrystal expand_isocrystal(const FrobeniusSpec& fr, long long f) {
  fr.validate();
  if (f < 1) throw std::invalid_argument("need at least one graded piece");
  LIsocrystal M;
  M.f = f;
  M.base = fr;
  const size_t n = static_cast<size_t>(fr.dimension());
  M.twists.assign(static_cast<size_t>(f), QMatrix::identity(n));
  return M;
}

std::pair<FrobeniusSpec, QMatrix> contract_isocrystal(const LIsocrystal& M) {
  M.base.validate();
  if (M.f < 1 || M.twists.size() != static_cast<size_t>(M.f))
    throw std::invalid_argument("wrong number of transition maps");
  const size_t n = static_cast<size_t>(M.base.dimension());
  QMatrix composite = QMatrix::identity(n);
  for (size_t i = 0; i < M.twists.size(); ++i) {
    const QMatrix& t = M.twists[i];
    if (t.rows != n || t.cols != n)
      throw std::invalid_argument("transition map has wrong shape");
    if (t.det() == 0)
      throw std::invalid_argument(
          "cycle inconsistency: singular transition map");
    // Edge composite T_{f-1} * ... * T_0.
    composite = t.mul(composite);
  }
  return {M.base, composite};
}

LIsocrystal apply_basis_changes(const LIsocrystal& M,
                                const std::vector<QMatrix>& P) {
  if (P.size() != static_cast<size_t>(M.f))
    throw std::invalid_argument("need one basis change per graded piece");
  const size_t n = static_cast<size_t>(M.base.dimension());
  for (const auto& p : P)
    if (p.rows != n || p.cols != n || p.det() == 0)
      throw std::invalid_argument("basis changes must be invertible");
  LIsocrystal out = M;
  for (size_t i = 0; i < static_cast<size_t>(M.f); ++i) {
    const QMatrix& target = P[(i + 1) % static_cast<size_t>(M.f)];
    out.twists[i] = target.mul(M.twists[i]).mul(P[i].inverse());
  }
  return out;
}

Rational t_N_of_expansion(const LIsocrystal& M, const FieldInvariants& k) {
  auto [base, composite] = contract_isocrystal(M);
  Rational symbolic = 0;
  for (const auto& b : base.blocks) {
    long long mult = 0;
    for (long long part : b.jordan) mult += part;
    symbolic += b.valuation * rat(static_cast<long>(mult));
  }
  const Rational det = composite.det();
  return rat(static_cast<long>(M.f)) * symbolic +
         rat(k.e) * rat(val_p(det, static_cast<unsigned long>(k.p)));
}

bool pair_admissibility_criterion(RootDatumPtr datum, const QVec& xi,
                                  const QVec& vals,
                                  const FieldInvariants& field, long long r) {
  if (r < 1) throw std::invalid_argument("denominator index must be >= 1");
  CocycleSpec spec;
  spec.datum = std::move(datum);
  spec.xi = xi;
  spec.field = field;
  spec.variant = Variant::normalized;
  spec.validate();
  const QVec s = spec.s_vector();
  for (const auto& c : s)
    if (!is_integer(rat(static_cast<long>(r)) * c))
      throw std::invalid_argument(
          "filtration denominator too coarse for the half-sum shift");
  return membership(spec, vals, Method::all);
}

}  // namespace pht
