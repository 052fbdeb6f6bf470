#pragma once

#include "toricq/lattice.hpp"

#include <cstddef>
#include <vector>

namespace toricq {

/**
 * Rational polyhedral cone in Q^d with both descriptions kept in sync.
 *
 * The generator side is a lineality basis (row Hermite normal form of the
 * lattice points of the lineality space) plus the extreme rays of the pointed
 * part, each reduced modulo the lineality space and made primitive. The
 * inequality side is the same data for the dual cone: a basis of the
 * equations (orthogonal complement of the span) plus facet normals reduced
 * modulo the equations. Both lists are sorted, so equal cones have equal
 * representations.
 */
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t dim, const std::vector<IntVector>& generators);
  /// The cone {x : a.x >= 0 for every a}.
  static Cone from_inequalities(std::size_t dim, const std::vector<IntVector>& inequalities);
  static Cone zero(std::size_t dim);
  static Cone full(std::size_t dim);

  std::size_t ambient_dim() const { return ambient_; }
  /// Dimension of the linear span.
  std::size_t dim() const { return ambient_ - equations_.size(); }
  std::size_t lineality_rank() const { return lineality_.size(); }
  bool is_pointed() const { return lineality_.empty(); }

  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality_basis() const { return lineality_; }
  const std::vector<IntVector>& facet_normals() const { return facets_; }
  const std::vector<IntVector>& equations() const { return equations_; }

  /// Rays plus both signs of every lineality basis vector.
  std::vector<IntVector> generators() const;
  /// Facet normals plus both signs of every equation.
  std::vector<IntVector> inequalities() const;

  bool contains(const IntVector& v) const;
  bool contains(const RationalVector& v) const;
  bool contains(const Cone& other) const;
  bool in_relative_interior(const IntVector& v) const;
  IntVector relative_interior_point() const;
  bool is_simplicial() const;

  friend bool operator==(const Cone& a, const Cone& b) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> equations_;
  std::vector<IntVector> facets_;
};

/// Generators of {x in Q^d : a.x >= 0 for all constraints a}, as a lineality
/// basis and a list of primitive extreme rays (double description method).
struct DoubleDescription {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};
DoubleDescription double_description(std::size_t dim, const std::vector<IntVector>& constraints);

Cone dual_cone(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
/// All faces, from the minimal face (the lineality space) up to c itself.
std::vector<Cone> faces(const Cone& c);
bool is_face_of(const Cone& f, const Cone& c);
/// Cone generated by the images of the generators of c under the linear map.
Cone image_cone(const Cone& c, const IntMatrix& map);
/// Cone of points whose image under `map` lies in c.
Cone preimage_cone(const Cone& c, const IntMatrix& map);

struct HilbertBasisResult {
  enum class Status { Complete, BoundExceeded };
  Status status = Status::Complete;
  std::vector<IntVector> elements;  // sorted; empty when the bound was exceeded
  bool complete() const { return status == Status::Complete; }
};

/// Minimal generating set of the monoid c ∩ Z^d of a pointed cone, found by
/// box enumeration. Every irreducible element lies in the zonotope spanned by
/// the extreme rays; if that zonotope leaves [-bound, bound]^d the result is
/// flagged BoundExceeded.
HilbertBasisResult hilbert_basis(const Cone& c, long bound);

}  // namespace toricq
