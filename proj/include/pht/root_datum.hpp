#pragma once

#include "pht/exactlin.hpp"
#include "pht/rational.hpp"

#include <memory>
#include <string>

namespace pht {

// Character vectors and cocharacter vectors both live in Z^rank with the
// standard dot pairing. Positive roots are the roots of the unipotent radical
// of the chosen (lower) parabolic: for GL(n) they are e_j - e_i with i < j,
// antidominant cocharacters have weakly decreasing coordinates, dominant
// characters weakly increasing ones.
class RootDatum {
 public:
  struct WeylElt {
    std::vector<long long> cochar_mat;  // rank x rank, acts on cocharacters
    std::vector<long long> char_mat;    // inverse transpose, acts on V_R
    std::vector<int> word;              // reduced in simple reflections (0-based)
  };

  static std::shared_ptr<const RootDatum> gl(int n);
  static std::shared_ptr<const RootDatum> pgl2();
  static std::shared_ptr<const RootDatum> custom(
      const std::vector<IntVec>& simple_roots,
      const std::vector<IntVec>& simple_coroots, const std::string& name);

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  bool is_gl() const { return gl_n_ > 0; }
  int gl_n() const { return gl_n_; }
  size_t num_simple() const { return simple_roots_.size(); }
  const std::vector<IntVec>& simple_roots() const { return simple_roots_; }
  const std::vector<IntVec>& simple_coroots() const { return simple_coroots_; }
  const std::vector<IntVec>& positive_roots() const { return positive_roots_; }
  const std::vector<IntVec>& positive_coroots() const { return positive_coroots_; }

  const std::vector<WeylElt>& weyl() const { return weyl_; }
  size_t weyl_size() const { return weyl_.size(); }
  size_t weyl_identity() const { return 0; }
  size_t weyl_mul(size_t a, size_t b) const;       // index of w_a * w_b
  size_t weyl_inverse(size_t a) const;
  size_t simple_reflection(int i) const;           // index of s_i

  QVec act_cochar(size_t w, const QVec& v) const;
  IntVec act_cochar(size_t w, const IntVec& v) const;
  QVec act_char(size_t w, const QVec& v) const;

  // Half sum of positive roots, character coordinates (rational entries).
  const QVec& eta() const { return eta_; }
  // Unique highest root / its coroot; errors unless the system is irreducible.
  const IntVec& highest_root() const;
  const IntVec& highest_coroot() const;

  // Orbit of a cocharacter point with witnesses (w indices), identity first.
  std::vector<std::pair<size_t, QVec>> weyl_orbit(const QVec& v) const;

  bool is_antidominant(const QVec& lambda) const;  // <alpha_i, lambda> <= 0
  bool is_dominant_char(const QVec& z) const;      // <z, alpha_i^vee> >= 0

  // Antidominant representative of a cocharacter orbit, with witness w such
  // that act_cochar(w, v) is the representative.
  std::pair<QVec, size_t> antidominant_rep(const QVec& v) const;
  // Dominant representative of a V_R point (increasing rearrangement for GL).
  QVec dominant_rearrange(const QVec& z) const;

  // Partial order on V_R given by the positive roots: z <= z' iff z' - z is a
  // nonnegative combination of positive roots. Suffix partial sums with equal
  // totals for GL; exact LP otherwise.
  bool leq_dominance(const QVec& z, const QVec& z2) const;
  // Definitional LP test, kept separate so the GL fast path can be validated.
  bool leq_dominance_lp(const QVec& z, const QVec& z2) const;

  // Partial order on the cocharacter lattice: lambda <= mu iff mu - lambda is
  // a nonnegative combination of negated positive coroots.
  bool leq_lambda(const QVec& lambda, const QVec& mu) const;

  // Monoid generators of the antidominant cone: closed form for GL(n) and
  // PGL2, bounded search for custom data (errors when the bound trips).
  std::vector<IntVec> antidominant_generators() const;

  // All antidominant mu with mu <= lambda in the cocharacter order.
  std::vector<IntVec> antidominant_lower_set(const IntVec& lambda) const;

 private:
  RootDatum() = default;
  void build(const std::vector<IntVec>& simple_roots,
             const std::vector<IntVec>& simple_coroots);

  std::string name_;
  int rank_ = 0;
  int gl_n_ = 0;
  std::vector<IntVec> simple_roots_;
  std::vector<IntVec> simple_coroots_;
  std::vector<IntVec> positive_roots_;
  std::vector<IntVec> positive_coroots_;
  std::vector<WeylElt> weyl_;
  std::vector<std::vector<size_t>> simple_mul_;  // [i][w] = index of s_i * w
  QVec eta_;
  IntVec highest_root_;
  IntVec highest_coroot_;
  bool irreducible_ = false;
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

// "GL2", "GL3", "GL4", "PGL2" or a custom spec handled by the caller.
RootDatumPtr root_datum_by_name(const std::string& name);

}  // namespace pht
