#pragma once

#include "toricq/cone_set.hpp"
#include "toricq/fan.hpp"
#include "toricq/lattice.hpp"
#include "toricq/quotient.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace toricq {

/// Divisor class group Cl = Z^free_rank ⊕ ⊕ Z/torsion[i] with the degree map
/// Z^n -> Cl. Rows of degree_map: free coordinates first (row Hermite normal
/// form), then one row per torsion factor with entries reduced mod the factor.
struct ClassGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  IntMatrix degree_map;

  IntVector degree(const IntVector& a) const;
  bool is_zero(const IntVector& cls) const;
};

/**
 * Cox presentation of a toric variety X with fan Sigma (n rays, rank d):
 * X = X^ // H with X^ ⊆ C^n the union of the orbits of the relevant orthant
 * faces and H = Spec C[Cl].
 *
 * The orthant fan is the fan of C^n (rays e_i, one maximal cone); cone i of
 * Sigma lifts to the orthant face spanned by the e_j of its rays.
 */
struct CoxPresentation {
  std::shared_ptr<const Fan> source;
  IntMatrix ray_matrix;  // n x d, row i = ray i; as a map M -> Z^n it is the pairing
  ClassGroup grading;
  std::shared_ptr<const Fan> orthant;
  ConeSet relevant;
  std::vector<std::size_t> lift;  // source cone -> orthant cone
  Sublattice torus_cochar;        // cocharacters of the identity component of H: ker(ray_matrix^T)

  std::size_t num_rays() const { return ray_matrix.rows(); }
};

CoxPresentation cox_presentation(std::shared_ptr<const Fan> fan);

struct MonomialSection {
  IntVector exponents;
  IntVector degree;
};

/// Section of the Cox ring given by rational coefficients on monomials.
struct PolynomialSection {
  std::vector<std::pair<Rational, IntVector>> terms;
};

using Section = std::variant<MonomialSection, PolynomialSection>;

/// Canonical section of the effective divisor sum a_i D_i. Throws on negative
/// or mis-sized exponents.
MonomialSection canonical_section(const CoxPresentation& p, const IntVector& a);

/// Relevant orthant faces on whose orbit the monomial vanishes.
ConeSet section_zero_set(const CoxPresentation& p, const MonomialSection& s);
/// Cones of Sigma whose lifted orbit lies in the zero set.
ConeSet section_zero_image(const CoxPresentation& p, const MonomialSection& s);
/// Support of the divisor: union of the orbit closures of the supported rays.
ConeSet divisor_support(const CoxPresentation& p, const IntVector& a);

ConeSet lift_open(const CoxPresentation& p, const ConeSet& u);

/// Isotropy group of H at the distinguished point of an orthant face: the
/// dual of Cl / <deg e_i : i not in the face>.
CokernelInfo isotropy(const CoxPresentation& p, std::size_t orthant_cone);
/// Index of the sublattice spanned by the rays of a cone of Sigma in the
/// lattice points of its span (gcd of maximal minors).
Integer multiplicity(const Fan& f, std::size_t cone);

struct RoundTripReport {
  bool quotient_exists = false;
  bool reproduces = false;  // same rays, maximal cones, and chart map
  bool geometric = false;
  Integer lattice_index = 0;  // index of the ray lattice image in N
  std::string note;
};

/// Quotient engine of the orthant fan by the identity component of H.
QuotientEngine cox_quotient_engine(const CoxPresentation& p);

/// Quotient of lift_open(U) by the identity component of H, compared with U.
RoundTripReport cox_round_trip(const CoxPresentation& p, const ConeSet& u);
RoundTripReport cox_round_trip(const CoxPresentation& p, const QuotientEngine& engine, const ConeSet& u);

/// The subtorus of the Cox torus acting on X^: preimage of L under e_i -> v_i.
Sublattice lifted_acting_lattice(const CoxPresentation& p, const Sublattice& l);

struct SectionVerdict {
  enum class Affine { Yes, No, SampledYes, SampledNo };
  bool homogeneous = false;
  Affine affine = Affine::No;
  bool contained = false;
  bool polynomial = false;
};

struct WitnessReport {
  std::vector<SectionVerdict> members;
  std::size_t pairs_checked = 0;
  std::size_t pairs_covered = 0;
  bool pairs_sampled = false;
  bool witness = false;
  std::vector<std::string> notes;
};

/// Checks a family of sections on the lifted open set u_hat (orthant cones)
/// against the globally-defined conditions: homogeneous for the lifted
/// acting lattice, each non-vanishing locus affine and inside u_hat, every
/// pair of points in a common non-vanishing locus. Monomial families are
/// decided on orbits; any polynomial member switches to seeded sampling.
WitnessReport verify_globally_defined(const CoxPresentation& p, const ConeSet& u_hat,
                                      const Sublattice& acting, const std::vector<Section>& family,
                                      std::uint64_t seed, std::size_t samples = 100);

std::string to_string(SectionVerdict::Affine a);

}  // namespace toricq
