#pragma once

#include "toricq/cone_set.hpp"
#include "toricq/fan.hpp"
#include "toricq/lattice.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace toricq {

/**
 * Invariant-character oracle for good quotients and saturation.
 *
 * Works on the character side only: the invariant characters of a chart s are
 * the lattice points of s^v ∩ L^perp, enumerated in the box [-bound, bound]^d.
 * No image cones in N/L are formed, so the verdicts are independent of
 * QuotientEngine.
 *
 *  - t maps into the chart of s  iff every invariant character of s is
 *    regular on t (nonnegative on the rays of t);
 *  - charts s, s' glue iff some invariant m of s with -m regular on s' cuts
 *    out s ∩ s' on both sides;
 *  - the invariant principal open of s containing t is the face of s where a
 *    relative-interior invariant of s^v ∩ L^perp ∩ t^perp vanishes.
 *
 * The box must contain generators of the cones involved; the default is
 * ample for the desk-scale corpus (ray entries of absolute value at most 2).
 */
class InvariantOracle {
 public:
  InvariantOracle(const Fan& fan, const Sublattice& cochar, long bound = 6);

  bool admits_good_quotient(const ConeSet& u) const;
  /// u saturated in u_prime; u_prime must be good for the oracle.
  bool is_saturated(const ConeSet& u, const ConeSet& u_prime) const;
  /// Smallest face of cone s cut out by an invariant character vanishing on t.
  std::size_t invariant_face(std::size_t s, std::size_t t) const;

  /// Chart-ring identity for cone s: the monoid s^v ∩ L^perp ∩ M equals the
  /// pullback of pi(s)^v ∩ M/L-dual, compared as box lattice points and, when
  /// the monoid is pointed, via Hilbert bases.
  struct ChartRingCheck {
    bool box_points_agree = false;
    bool hilbert_bases_compared = false;
    bool hilbert_bases_agree = false;
    bool ok() const { return box_points_agree && (!hilbert_bases_compared || hilbert_bases_agree); }
  };
  ChartRingCheck chart_ring_identity(std::size_t s) const;

  /// u saturated in the good selection whose maximal cones are charts; no
  /// goodness check.
  bool saturated_in_good(const ConeSet& u, const std::vector<std::size_t>& charts) const;

 private:
  const Fan& fan_;
  Sublattice cochar_;
  long bound_;
  std::vector<IntVector> box_;                       // invariant box characters
  std::vector<std::vector<std::size_t>> invariants_; // per cone: indices into box_
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> face_table_;  // [s][t] for t a face of s
  bool maps_into(std::size_t t, std::size_t s) const;
  std::size_t compute_invariant_face(std::size_t s, std::size_t t) const;
};

/// Saturated selections of u_prime (those u with u saturated in u_prime).
std::vector<ConeSet> saturated_subsets(const InvariantOracle& oracle, const Fan& f,
                                       const ConeSet& u_prime);
/// Same, restricted to the given open selections.
std::vector<ConeSet> saturated_subsets(const InvariantOracle& oracle, const Fan& f, const ConeSet& u_prime,
                                       const std::vector<ConeSet>& opens);

/// T-maximal selections by brute force: goods and saturation from the oracle.
std::vector<ConeSet> brute_force_t_maximal(const InvariantOracle& oracle, const Fan& f);

/// Largest saturated selection of x_prime inside w, by brute force over all
/// saturated selections; throws std::logic_error if no unique maximum exists.
ConeSet brute_force_max_saturated(const InvariantOracle& oracle, const Fan& f,
                                  const ConeSet& x_prime, const ConeSet& w);
/// Same, from a precomputed list of saturated selections.
ConeSet brute_force_max_saturated(const std::vector<ConeSet>& saturated, const ConeSet& w);

}  // namespace toricq
