#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pht/exactlin.hpp"
#include "pht/rational.hpp"
#include "pht/root_datum.hpp"
#include "pht/scalar.hpp"

namespace pht {

// One Frobenius eigenvalue: an opaque identity, its valuation, and the Jordan
// partition of its multiplicity.
struct FrobeniusBlock {
  std::string label;
  Rational valuation;
  std::vector<long long> jordan;  // partition; parts >= 1
};

struct FrobeniusSpec {
  std::vector<FrobeniusBlock> blocks;

  long long dimension() const;
  void validate() const;  // distinct labels, nonempty partitions
};

// Contiguous coordinate range of one Jordan cell in the fixed Jordan basis.
// Within a cell, coordinate j is mapped onto coordinate j-1 by the nilpotent
// part, so the invariant subspaces of the cell are its coordinate prefixes.
struct JordanCell {
  size_t block_index;
  size_t offset;
  size_t size;
};

std::vector<JordanCell> jordan_cells(const FrobeniusSpec& fr);

// Exhaustive separated decreasing filtration: strictly increasing jumps,
// bases[i] spanning the step at jumps[i]; the first step is the full space
// and ranks strictly decrease.
struct Flag {
  std::vector<Rational> jumps;
  std::vector<std::vector<QVec>> bases;

  void validate(size_t ambient_dim) const;
  std::vector<size_t> step_dims() const;  // exact ranks, one per jump
};

struct FilteredIsocrystal {
  FrobeniusSpec frobenius;
  Flag flag;
  FieldInvariants field;

  void validate() const;
};

// The jump sequence with multiplicities, written in increasing order: jump b
// repeated dim gr^b times.
QVec filtration_type(const FilteredIsocrystal& D);

// A Frobenius-invariant subspace, as a sorted list of Jordan-basis coordinate
// indices (always a union of cell prefixes).
using CoordSubspace = std::vector<size_t>;

// The full finite lattice of invariant subspaces: the product over labels of
// each cell's prefix flag. Throws InfiniteFamilyError when some label has two
// or more Jordan blocks (a continuum of invariant lines exists).
std::vector<CoordSubspace> invariant_subspaces(const FrobeniusSpec& fr);

// Filtration degree sum of the induced filtration on the subspace.
Rational t_H(const FilteredIsocrystal& D, const CoordSubspace& sub);
// Valuation of the determinant of Frobenius restricted to the subspace;
// throws invalid_argument when the subspace is not invariant.
Rational t_N_L(const FrobeniusSpec& fr, const CoordSubspace& sub);

struct AdmissibilityReport {
  bool admissible = false;
  Rational t_H_full;
  Rational t_N_full;
  // A witnessing subspace when not admissible: either the full space (degree
  // mismatch) or a proper invariant subspace with t_H > t_N.
  std::optional<CoordSubspace> violator;
};

AdmissibilityReport is_weakly_admissible(const FilteredIsocrystal& D);

struct LabeledValuation {
  std::string label;
  Rational valuation;
};

// Build a weakly admissible filtered isocrystal with the given eigenvalue
// data and filtration type xi_i + (i-1)*e*f (one Jordan block per distinct
// label, Vandermonde filtration steps), verifying admissibility; throws
// NoAdmissibleFiltration with a polygon witness when the valuations lie
// outside the admissible domain.
FilteredIsocrystal construct_admissible(const std::vector<LabeledValuation>& zeta,
                                        const QVec& xi,
                                        const FieldInvariants& field);

struct HNStep {
  CoordSubspace subspace;  // cumulative subspace at this step
  Rational slope;          // slope of the step's subquotient
};

// Canonical slope filtration: successive invariant subspaces whose
// subquotient slopes (t_H - t_N)/dim strictly decrease; a single step of
// slope zero exactly when D is weakly admissible.
std::vector<HNStep> hn_filtration(const FilteredIsocrystal& D);

struct GL2Classification {
  int case_number = 0;     // 1: boundary semisimple, 2: interior semisimple,
                           // 3: one non-semisimple eigenvalue
  int admissible_count = 0;  // admissible filtration classes among
                             // {coordinate lines, generic line}
};

// Classify the rank-2 situation for eigenvalue valuations in the admissible
// domain; zeta holds the two valuations in the filtration-type coordinates.
GL2Classification gl2_classify(const QVec& xi,
                               const std::vector<LabeledValuation>& zeta,
                               bool semisimple, const FieldInvariants& field);

// Cyclic expansion: f graded pieces with rational transition maps between
// consecutive pieces; the wrap-around edge additionally carries the symbolic
// eigenvalue factor `base`, so the cycle composite is base * twists[f-1] *
// ... * twists[0].
struct LIsocrystal {
  long long f = 1;
  FrobeniusSpec base;
  std::vector<QMatrix> twists;  // size f, each ambient x ambient
};

LIsocrystal expand_isocrystal(const FrobeniusSpec& fr, long long f);

// Normalize the cycle back to one piece: returns the symbolic factor and the
// rational composite (identity for freshly expanded data). Throws
// invalid_argument when a transition is singular (cycle inconsistency).
std::pair<FrobeniusSpec, QMatrix> contract_isocrystal(const LIsocrystal& M);

// Change bases of the graded pieces by P[i] (each invertible); an isomorphism
// of cyclic data. P.size() must equal M.f.
LIsocrystal apply_basis_changes(const LIsocrystal& M,
                                const std::vector<QMatrix>& P);

// Valuation of the determinant of the full cyclic Frobenius: f copies of the
// symbolic part plus the rational twists' determinant valuation.
Rational t_N_of_expansion(const LIsocrystal& M, const FieldInvariants& k);

// Decide whether the valuation vector (coweight-dual coordinates) lies in the
// normalized admissible domain, with filtration jumps allowed in (1/r)Z;
// r must make r*(xi + e*f*eta) integral.
bool pair_admissibility_criterion(RootDatumPtr datum, const QVec& xi,
                                  const QVec& vals,
                                  const FieldInvariants& field, long long r);

}  // namespace pht
