#pragma once

#include "toricq/cone.hpp"
#include "toricq/cone_set.hpp"
#include "toricq/lattice.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricq {

using RaySet = std::vector<std::size_t>;

/// Raised when an enumeration would exceed its configured size guard.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * A fan in N = Z^d given by primitive rays and maximal cones (ray index sets).
 *
 * On construction every face of every maximal cone is enumerated, so each
 * cone of the fan has a stable index. Index 0 is always the zero cone; cones
 * are ordered by number of rays, then lexicographically by ray indices. A fan
 * with no maximal cones is the bare torus: its only cone is the zero cone.
 *
 * Construction only checks shapes and indices. Geometric validity (strong
 * convexity, face intersections) is reported by validate_fan().
 */
class Fan {
 public:
  Fan(std::size_t dim, std::vector<IntVector> rays, std::vector<RaySet> max_cones);

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<RaySet>& listed_max_cones() const { return max_cones_; }

  std::size_t num_cones() const { return cones_.size(); }
  const RaySet& cone_rays(std::size_t i) const { return cones_[i]; }
  const Cone& cone(std::size_t i) const { return cone_objects_[i]; }
  std::optional<std::size_t> index_of(const RaySet& rays) const;
  /// Index of the cone spanned by one ray.
  std::optional<std::size_t> ray_cone(std::size_t ray) const { return index_of({ray}); }

  /// Cones that are faces of cone i (including i).
  const ConeSet& faces_of(std::size_t i) const { return faces_[i]; }
  /// Cones having cone i as a face (including i); the orbit closure of O_i.
  const ConeSet& star_of(std::size_t i) const { return stars_[i]; }
  /// Maximal cones among all cones (the zero cone for the bare torus).
  const std::vector<std::size_t>& maximal_cones() const { return maximal_; }
  ConeSet all_cones() const;

  std::string describe_cone(std::size_t i) const;

 private:
  std::size_t dim_;
  std::vector<IntVector> rays_;
  std::vector<RaySet> max_cones_;
  std::vector<RaySet> cones_;
  std::vector<Cone> cone_objects_;
  std::vector<ConeSet> faces_;
  std::vector<ConeSet> stars_;
  std::vector<std::size_t> maximal_;
};

/// Face-closed set of cones of a fan: a T_X-invariant open subset.
class SubfanSelection {
 public:
  SubfanSelection(std::shared_ptr<const Fan> fan, ConeSet cones);
  static SubfanSelection whole(std::shared_ptr<const Fan> fan);
  static SubfanSelection empty(std::shared_ptr<const Fan> fan);
  /// Face closure of the given cones.
  static SubfanSelection generated_by(std::shared_ptr<const Fan> fan,
                                      const std::vector<std::size_t>& cones);

  const Fan& fan() const { return *fan_; }
  const std::shared_ptr<const Fan>& fan_ptr() const { return fan_; }
  const ConeSet& cones() const { return cones_; }
  bool contains(std::size_t cone) const { return cones_.contains(cone); }
  bool is_empty() const { return cones_.empty(); }
  std::vector<std::size_t> maximal_cones() const;

  friend bool operator==(const SubfanSelection& a, const SubfanSelection& b) {
    return a.fan_ == b.fan_ && a.cones_ == b.cones_;
  }

 private:
  std::shared_ptr<const Fan> fan_;
  ConeSet cones_;
};

bool is_face_closed(const Fan& f, const ConeSet& s);
std::vector<std::size_t> maximal_members(const Fan& f, const ConeSet& s);
ConeSet face_closure(const Fan& f, const std::vector<std::size_t>& cones);
/// Smallest star-closed (closed, invariant) set containing the given cones.
ConeSet star_closure(const Fan& f, const ConeSet& s);

struct FanReport {
  bool valid = true;
  std::vector<std::string> issues;
  /// First pair of maximal cones (listed indices) violating the face condition.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

FanReport validate_fan(const Fan& f);
bool is_complete(const Fan& f);
bool is_simplicial(const Fan& f);
/// Every cone of the fan is generated by part of a lattice basis.
bool is_smooth(const Fan& f);

/// All face-closed subsets of the cone poset, the empty selection included.
std::vector<ConeSet> enumerate_open_subsets(const Fan& f, std::size_t max_subsets = std::size_t{1} << 20);

/// Entry i is the set of cones tau with O_tau in the closure of O_i.
std::vector<ConeSet> orbit_poset(const Fan& f);
/// Cone whose relative interior contains v: the orbit that lambda_v(t).x0
/// approaches as t -> 0. Empty when v lies outside the support.
std::optional<std::size_t> limit_of_generic_point(const Fan& f, const IntVector& v);

/// Unimodular automorphism of N permuting the rays and the cones of a fan.
struct FanAutomorphism {
  IntMatrix matrix;
  std::vector<std::size_t> ray_permutation;  // ray i -> ray_permutation[i]
  std::vector<std::size_t> cone_permutation;  // cone index -> cone index

  friend bool operator==(const FanAutomorphism& a, const FanAutomorphism& b) {
    return a.matrix == b.matrix;
  }
};

/// Checks that the matrix is unimodular and preserves the fan; fills in the
/// induced permutations. Empty if it does not preserve the fan.
std::optional<FanAutomorphism> as_fan_automorphism(const Fan& f, const IntMatrix& m);
/// All automorphisms; requires the rays to span Q^d. Identity first.
std::vector<FanAutomorphism> fan_automorphisms(const Fan& f);
FanAutomorphism compose(const Fan& f, const FanAutomorphism& a, const FanAutomorphism& b);
FanAutomorphism inverse(const Fan& f, const FanAutomorphism& a);

}  // namespace toricq
