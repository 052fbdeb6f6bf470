#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricq {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Raised when two lattice objects do not fit together (ranks, shapes).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Builds from a list of rows; every row must have length `cols`.
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  std::vector<IntVector> row_list() const;

  IntMatrix transpose() const;
  IntVector apply(const IntVector& v) const;  // this * v
  /// Keeps rows [first, last).
  IntMatrix row_range(std::size_t first, std::size_t last) const;
  IntMatrix col_range(std::size_t first, std::size_t last) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct SmithDecomposition {
  IntMatrix left;           // unimodular, rows x rows
  std::vector<Integer> diag;  // length min(rows, cols)
  IntMatrix right;          // unimodular, cols x cols
};

/// Sublattice of Z^n given by a basis in row Hermite normal form.
class Sublattice {
 public:
  Sublattice() = default;
  /// Lattice generated by arbitrary (possibly dependent) generators.
  Sublattice(std::size_t ambient_rank, const std::vector<IntVector>& generators);
  static Sublattice zero(std::size_t ambient_rank) { return Sublattice(ambient_rank, {}); }
  static Sublattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVector>& basis() const { return basis_; }
  IntMatrix basis_matrix() const { return IntMatrix::from_rows(ambient_rank_, basis_); }
  bool saturated() const { return saturated_; }

  bool contains(const IntVector& v) const;
  /// Same rational span.
  bool same_span(const Sublattice& other) const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_rank_ = 0;
  std::vector<IntVector> basis_;
  bool saturated_ = true;
};

struct CokernelInfo {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, divisibility chain
};

// ---- vector helpers -------------------------------------------------------

Integer dot(const IntVector& a, const IntVector& b);
Integer content(const IntVector& v);  // gcd of entries, 0 for the zero vector
IntVector make_primitive(IntVector v);
bool is_zero(const IntVector& v);
IntVector negated(IntVector v);
IntVector add(const IntVector& a, const IntVector& b);
/// a*x + b*y
IntVector combine(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y);
IntVector clear_denominators(const RationalVector& v);
std::string to_string(const IntVector& v);

// ---- matrix algorithms ----------------------------------------------------

std::size_t rank_of(const std::vector<IntVector>& rows);
std::size_t rank_of(const IntMatrix& m);
Integer determinant(const IntMatrix& m);

/// Row Hermite normal form: positive pivots, entries above a pivot reduced
/// into [0, pivot), zero rows dropped.
std::vector<IntVector> hermite_normal_form(std::size_t cols, std::vector<IntVector> rows);

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Saturated lattice {x : a x = 0}.
Sublattice kernel_lattice(const IntMatrix& a);
Sublattice saturate(const Sublattice& l);
/// Surjection Z^n -> Z^(n - rank L) with kernel exactly L. Throws for unsaturated L.
IntMatrix quotient_lattice_map(const Sublattice& l);
CokernelInfo cokernel_diagnostics(const IntMatrix& a);

/// Integer matrix s with a * s = identity; `a` must be surjective onto Z^rows.
IntMatrix right_inverse(const IntMatrix& a);
/// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& a);

}  // namespace toricq
