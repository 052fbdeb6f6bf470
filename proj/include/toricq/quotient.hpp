#pragma once

#include "toricq/cone.hpp"
#include "toricq/fan.hpp"
#include "toricq/lattice.hpp"

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace toricq {

inline constexpr std::size_t kNoCone = std::numeric_limits<std::size_t>::max();

/// Subtorus H of the big torus acting on a toric variety, identified with its
/// saturated cocharacter lattice L in N.
struct SubtorusAction {
  std::shared_ptr<const Fan> fan;
  Sublattice cochar;     // saturated
  IntMatrix projection;  // N -> N/L, surjective with kernel L
  /// False when the given generators spanned a non-saturated lattice and
  /// were replaced by the saturation.
  bool input_saturated = true;
};

/// The acting torus is the image of T -> T_X, so only the saturation of the
/// span of the cocharacter generators matters.
SubtorusAction normalize_action(std::shared_ptr<const Fan> fan,
                                const std::vector<IntVector>& cochar_generators);

/// Why a selection has no good quotient. Indices are cones of the source fan.
struct Obstruction {
  enum class Kind {
    ChartNotAffine,  // `second` maps into the image of chart `first` without being a face of it
    ImageNotFan,     // images of charts `first`, `second` do not meet in a common face
    MixedLineality,  // images of charts `first`, `second` have different lineality spaces
  };
  Kind kind;
  std::size_t first;
  std::size_t second;
  std::string message;
};

/**
 * Combinatorial certificate of a good quotient U -> U // H.
 *
 * The target lattice is N / (L + common lineality of the chart images); the
 * quotient fan lives there. Each maximal cone of the quotient fan has a chart
 * cone in U whose affine chart is exactly the preimage of the corresponding
 * affine chart downstairs.
 */
struct QuotientFan {
  ConeSet source;                      // U, as cones of the source fan
  std::size_t target_rank = 0;
  IntMatrix projection;                // N -> target lattice
  std::shared_ptr<const Fan> fan;      // the quotient fan
  /// (maximal cone of the quotient fan, chart cone of the source fan)
  std::vector<std::pair<std::size_t, std::size_t>> charts;
  /// Source cone index -> cone of the quotient fan whose orbit receives its
  /// orbit; kNoCone for cones outside U.
  std::vector<std::size_t> orbit_map;
  /// Every chart maps its faces bijectively onto the faces of its image.
  bool geometric = false;

  bool source_empty() const { return source.empty(); }
};

using QuotientOutcome = std::variant<QuotientFan, Obstruction>;

/// Raised when an operation needs a good quotient that does not exist.
class NoGoodQuotient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Good-quotient machinery for one (fan, subtorus) pair.
 *
 * The images of all cones of the fan in N/L and their pairwise relations are
 * computed once; afterwards every query on a selection is pure set
 * combinatorics, which is what the enumeration sweeps rely on.
 *
 * A selection U has a good quotient iff for every maximal cone s of U the
 * cones of U mapping into pi(s) are exactly the faces of s, and the images of
 * the maximal cones form a fan (common lineality split off).
 */
class QuotientEngine {
 public:
  explicit QuotientEngine(SubtorusAction action);

  const SubtorusAction& action() const { return action_; }
  const Fan& fan() const { return *action_.fan; }
  const Cone& image(std::size_t cone) const { return images_[cone]; }

  std::optional<Obstruction> obstruction(const ConeSet& u) const;
  bool admits_good_quotient(const ConeSet& u) const { return !obstruction(u).has_value(); }
  QuotientOutcome good_quotient(const ConeSet& u) const;

  /// Orbit map of a good selection in terms of image classes: entry tau is the
  /// smallest-index cone whose image equals the quotient cone receiving
  /// O_tau; kNoCone outside u. Throws NoGoodQuotient.
  std::vector<std::size_t> orbit_classes(const ConeSet& u) const;
  /// Image classes forming the quotient fan of a good selection.
  ConeSet quotient_classes(const ConeSet& u) const;
  /// For class representatives a, b of a good selection: cone a is a face of b
  /// in the quotient fan.
  bool class_is_face(std::size_t a, std::size_t b) const { return maps_into_[b].contains(a); }

  /// u is a union of fibres of the quotient map of u_prime (orbit-image rule).
  bool is_saturated(const ConeSet& u, const ConeSet& u_prime) const;
  /// Largest saturated selection of x_prime inside w.
  ConeSet max_saturated_inside(const ConeSet& x_prime, const ConeSet& w) const;

 private:
  SubtorusAction action_;
  std::vector<Cone> images_;
  std::vector<std::size_t> image_class_;
  std::vector<ConeSet> maps_into_;     // [s] = {t : pi(t) ⊆ pi(s)}
  std::vector<ConeSet> image_faces_;   // [s] = {t : pi(t) is a face of pi(s)}
  std::vector<ConeSet> compatible_;    // [s] = {t : pi(s), pi(t) meet in a common face}
  std::vector<ConeSet> same_lineality_;
};

QuotientOutcome good_quotient(const SubfanSelection& u, const SubtorusAction& action);
bool is_saturated(const SubfanSelection& u, const SubfanSelection& u_prime,
                  const SubtorusAction& action);
SubfanSelection max_saturated_inside(const SubfanSelection& x_prime, const SubfanSelection& w,
                                     const SubtorusAction& action);

/// Selections of the fan admitting a good quotient.
std::vector<ConeSet> enumerate_good_subsets(const QuotientEngine& engine,
                                            std::size_t max_subsets = std::size_t{1} << 20);

/// The A_k condition on a quotient space. Quotient spaces produced here are
/// toric varieties, which embed into toric varieties; so A_1 and A_2 hold.
bool quotient_has_ak_property(const QuotientEngine& engine, const ConeSet& u, int k);

/// (T,k)-maximal selections: good selections that are not a proper saturated
/// subset of a larger good selection whose quotient is A_k.
std::vector<ConeSet> t_maximal_subsets(const QuotientEngine& engine, int k,
                                       std::size_t max_subsets = std::size_t{1} << 20);

/// Builds the explicit quotient fan from an engine; throws NoGoodQuotient.
QuotientFan build_quotient_fan(const QuotientEngine& engine, const ConeSet& u);

/// Violations of the QuotientFan invariants (empty when all hold).
std::vector<std::string> quotient_invariant_violations(const QuotientEngine& engine,
                                                       const QuotientFan& q);

struct StagedQuotientReport {
  bool nested = false;                  // L1 ⊆ L2
  bool first_stage_exists = false;      // U // H1
  bool residual_input_saturated = true; // image of L2 in the stage-1 lattice
  bool staged_exists = false;           // (U // H1) // (H2/H1)
  bool direct_exists = false;           // U // H2
  bool consistent = false;              // both exist and agree, or both fail
  bool fans_agree = false;              // meaningful when both exist
  std::vector<std::string> notes;
};

StagedQuotientReport staged_quotient(const SubfanSelection& u, const SubtorusAction& first,
                                     const SubtorusAction& second);
/// Same, with engines for both subtori on the source fan.
StagedQuotientReport staged_quotient(const QuotientEngine& first, const QuotientEngine& second, const ConeSet& u);

/// Combinatorial check of the standard properties of a good quotient p:
/// images of closed invariant sets are closed, disjoint closed invariant sets
/// have disjoint images, saturated opens have open images and restrict to
/// good quotients, and A ∩ U0 is saturated in A.
struct QuotientPropertyReport {
  std::size_t closed_images_checked = 0;
  std::size_t disjointness_checked = 0;
  std::size_t saturated_opens_checked = 0;
  std::size_t restriction_checked = 0;
  std::vector<std::string> violations;  // prefixed (i)..(iv)
  bool ok() const { return violations.empty(); }
};

QuotientPropertyReport check_quotient_properties(const QuotientEngine& engine, const ConeSet& u);

std::string describe(const Obstruction& o, const Fan& f);

}  // namespace toricq
