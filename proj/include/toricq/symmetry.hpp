#pragma once

#include "toricq/cone_set.hpp"
#include "toricq/fan.hpp"
#include "toricq/quotient.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace toricq {

/// Finite group of fan automorphisms, closed under composition and inverse.
/// The identity comes first.
class SymmetryGroup {
 public:
  static SymmetryGroup trivial(std::shared_ptr<const Fan> fan);
  /// Closure of the given matrices; throws std::invalid_argument if one of
  /// them does not preserve the fan.
  static SymmetryGroup generated_by(std::shared_ptr<const Fan> fan, const std::vector<IntMatrix>& generators);
  static SymmetryGroup from_elements(std::shared_ptr<const Fan> fan, std::vector<FanAutomorphism> elements);

  const Fan& fan() const { return *fan_; }
  const std::shared_ptr<const Fan>& fan_ptr() const { return fan_; }
  const std::vector<FanAutomorphism>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool is_trivial() const { return elements_.size() == 1; }

 private:
  SymmetryGroup(std::shared_ptr<const Fan> fan, std::vector<FanAutomorphism> elements)
      : fan_(std::move(fan)), elements_(std::move(elements)) {}
  std::shared_ptr<const Fan> fan_;
  std::vector<FanAutomorphism> elements_;
};

bool preserves_lattice(const FanAutomorphism& g, const Sublattice& l);

/**
 * The acting group: the subtorus H with cocharacters L together with a finite
 * group of fan symmetries mapping L into L. The symmetries then descend to
 * N/L and permute the cones of any H-quotient fan of an invariant selection.
 */
class GroupActionData {
 public:
  /// Throws std::invalid_argument if the fans differ or a symmetry moves L.
  GroupActionData(SubtorusAction act, SymmetryGroup sym);

  const SubtorusAction& act() const { return engine_.action(); }
  const SymmetryGroup& sym() const { return sym_; }
  const QuotientEngine& engine() const { return engine_; }
  const Fan& fan() const { return sym_.fan(); }

 private:
  SymmetryGroup sym_;
  QuotientEngine engine_;
};

ConeSet translate(const FanAutomorphism& g, const ConeSet& u);
/// Throws std::invalid_argument if the matrix does not preserve the fan.
SubfanSelection translate(const IntMatrix& g, const SubfanSelection& u);

/// Intersection of all translates of u.
ConeSet w_set(const SymmetryGroup& sym, const ConeSet& u);
SubfanSelection w_set(const SubfanSelection& u, const GroupActionData& g);
bool is_invariant(const SymmetryGroup& sym, const ConeSet& u);

/**
 * Fibres of W -> W // H -> W // G for an invariant good selection W.
 *
 * Two cones lie in one fibre iff their quotient cones are in one orbit of the
 * induced symmetry action; the key of a cone is the smallest class index in
 * that orbit.
 */
class CompositeFibres {
 public:
  /// Throws NoGoodQuotient or std::invalid_argument (w not invariant).
  CompositeFibres(const GroupActionData& g, const ConeSet& w);

  const ConeSet& domain() const { return w_; }
  std::size_t key(std::size_t cone) const { return key_[cone]; }
  ConeSet keys(const ConeSet& v) const;
  /// Union of the fibres meeting v.
  ConeSet saturation(const ConeSet& v) const;
  bool is_saturated(const ConeSet& v) const { return saturation(v) == v; }
  /// Quotient classes of W // H grouped into orbits, sorted.
  const std::vector<std::vector<std::size_t>>& class_orbits() const { return orbits_; }

 private:
  ConeSet w_;
  std::vector<std::size_t> key_;
  std::vector<std::vector<std::size_t>> orbits_;
};

struct TheoremReport {
  ConeSet u;
  ConeSet w;
  bool refused = false;
  std::string diagnosis;
  bool open = false;
  bool good = false;
  bool saturated = false;
  std::optional<Obstruction> obstruction;
  std::size_t quotient_cones = 0;                     // cones of W // H
  std::vector<std::vector<std::size_t>> class_orbits; // W // H cones grouped by the symmetries
  bool connected = true;                              // symmetry group trivial
  std::vector<std::string> caveats;

  bool conclusions_hold() const { return !refused && open && good && saturated; }
};

/// Checks on W = w_set(u): open, has a good quotient by H, H-saturated in u.
/// Refuses unless u is one of the given (T,2)-maximal selections.
TheoremReport verify_theorem_conclusions(const GroupActionData& g, const ConeSet& u,
                                         const std::vector<ConeSet>& t_maximal);
TheoremReport verify_theorem_conclusions(const GroupActionData& g, const ConeSet& u,
                                         std::size_t max_subsets = std::size_t{1} << 20);

struct CorollaryReport {
  struct MaximalEntry {
    TheoremReport theorem;
    bool ok = false;  // W open with a good quotient
  };
  struct InvariantEntry {
    ConeSet v;
    std::optional<std::size_t> host;  // index into maximal
    bool ok = false;
  };
  std::vector<MaximalEntry> maximal;
  std::vector<InvariantEntry> invariant;

  bool ok() const;
};

/// For every T-maximal U: W(U) open with a good quotient. For every invariant
/// good V: some W(U) contains V as a union of composite fibres. Requires a
/// complete simplicial fan (std::invalid_argument otherwise).
CorollaryReport verify_corollary(const GroupActionData& g, std::size_t max_subsets = std::size_t{1} << 20);

struct Eq1Report {
  ConeSet x_prime, x, b;
  bool x_prime_good = false;
  bool x_open_in_x_prime = false;
  bool x_invariant = false;
  bool w_x_prime_good = false;
  bool w_x_prime_saturated = false;
  bool w_b_identity = false;  // W(X') ∩ B = W(B)
  ConeSet u;                  // largest H-saturated selection of X' inside X
  ConeSet left;               // W(U)
  ConeSet right;              // W(X') minus the composite saturation of W(B)
  bool equal = false;
  std::optional<std::size_t> witness;  // a cone in exactly one side
  std::vector<std::string> notes;

  bool hypotheses_hold() const {
    return x_prime_good && x_open_in_x_prime && x_invariant && w_x_prime_good && w_x_prime_saturated;
  }
};

/// Both routes to W(U) for U the largest saturated selection of X' inside X.
/// Reusable across many X for one X'.
class Eq1Checker {
 public:
  Eq1Checker(const GroupActionData& g, const ConeSet& x_prime);
  Eq1Report check(const ConeSet& x) const;

 private:
  const GroupActionData& g_;
  ConeSet x_prime_;
  bool good_ = false;
  ConeSet w_x_prime_;
  bool w_good_ = false;
  bool w_saturated_ = false;
  std::optional<CompositeFibres> fibres_;
};

Eq1Report eq1_crosscheck(const GroupActionData& g, const ConeSet& x_prime, const ConeSet& x);

}  // namespace toricq
