#include "toricq/lattice.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace toricq {

// ---- IntMatrix ------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionError("IntMatrix::from_rows: row " + std::to_string(r) + " has length " +
                           std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw DimensionError("IntMatrix::apply: vector length mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t last) const {
  IntMatrix m(last - first, cols_);
  for (std::size_t r = first; r < last; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r - first, c) = (*this)(r, c);
  return m;
}

IntMatrix IntMatrix::col_range(std::size_t first, std::size_t last) const {
  IntMatrix m(rows_, last - first);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = first; c < last; ++c) m(r, c - first) = (*this)(r, c);
  return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("IntMatrix product: inner dimension mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << to_string(m.row(r));
  }
  return os << ']';
}

// ---- vector helpers -------------------------------------------------------

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntVector make_primitive(IntVector v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("add: length mismatch");
  IntVector s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

IntVector combine(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y) {
  IntVector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = a * x[i] + b * y[i];
  return s;
}

IntVector clear_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  return out;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

// ---- elimination ----------------------------------------------------------

std::size_t rank_of(const std::vector<IntVector>& rows_in) {
  if (rows_in.empty()) return 0;
  std::vector<IntVector> rows = rows_in;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      rows[r] = make_primitive(combine(rows[rank][c], rows[r], -rows[r][c], rows[rank]));
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_of(const IntMatrix& m) { return rank_of(m.row_list()); }

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<IntVector> hermite_normal_form(std::size_t cols, std::vector<IntVector> rows) {
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    while (true) {
      // Smallest nonzero |entry| at or below pivot_row in column c.
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        if (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pivot_row][c].get_mpz_t());
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= q * rows[pivot_row][k];
        if (rows[r][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (pivot_row < rows.size() && rows[pivot_row][c] != 0) {
      if (rows[pivot_row][c] < 0) rows[pivot_row] = negated(std::move(rows[pivot_row]));
      for (std::size_t r = 0; r < pivot_row; ++r) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pivot_row][c].get_mpz_t());
        if (q != 0)
          for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= q * rows[pivot_row][k];
      }
      pivot_cols.push_back(c);
      ++pivot_row;
    }
  }
  rows.resize(pivot_row);
  return rows;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix left = IntMatrix::identity(m);
  IntMatrix right = IntMatrix::identity(n);
  const std::size_t k = std::min(m, n);

  for (std::size_t t = 0; t < k; ++t) {
    bool found = false;
    while (true) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pi == m || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;
      found = true;
      d.swap_rows(t, pi);
      left.swap_rows(t, pi);
      d.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_row_multiple(i, t, -q);
        left.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_col_multiple(j, t, -q);
        right.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility fix-up: pull a non-divisible row into the pivot row.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row_multiple(t, i, 1);
            left.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (!found) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      left.negate_row(t);
    }
  }

  SmithDecomposition out{std::move(left), {}, std::move(right)};
  out.diag.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.diag.push_back(d(i, i));
  return out;
}

// ---- Sublattice -----------------------------------------------------------

namespace {

bool basis_is_saturated(std::size_t ambient, const std::vector<IntVector>& basis) {
  if (basis.empty()) return true;
  auto snf = smith_normal_form(IntMatrix::from_rows(ambient, basis));
  return std::all_of(snf.diag.begin(), snf.diag.end(), [](const Integer& x) { return x == 1; });
}

}  // namespace

Sublattice::Sublattice(std::size_t ambient_rank, const std::vector<IntVector>& generators)
    : ambient_rank_(ambient_rank) {
  for (const auto& g : generators)
    if (g.size() != ambient_rank)
      throw DimensionError("Sublattice: generator " + to_string(g) + " not in Z^" +
                           std::to_string(ambient_rank));
  basis_ = hermite_normal_form(ambient_rank, generators);
  saturated_ = basis_is_saturated(ambient_rank, basis_);
}

Sublattice Sublattice::full(std::size_t ambient_rank) {
  return Sublattice(ambient_rank, IntMatrix::identity(ambient_rank).row_list());
}

bool Sublattice::contains(const IntVector& v_in) const {
  if (v_in.size() != ambient_rank_) throw DimensionError("Sublattice::contains: wrong length");
  IntVector v = v_in;
  for (const auto& h : basis_) {
    std::size_t p = 0;
    while (h[p] == 0) ++p;
    if (!mpz_divisible_p(v[p].get_mpz_t(), h[p].get_mpz_t())) return false;
    Integer q = v[p] / h[p];
    for (std::size_t k = 0; k < ambient_rank_; ++k) v[k] -= q * h[k];
  }
  return is_zero(v);
}

bool Sublattice::same_span(const Sublattice& other) const {
  if (ambient_rank_ != other.ambient_rank_ || rank() != other.rank()) return false;
  std::vector<IntVector> both = basis_;
  both.insert(both.end(), other.basis_.begin(), other.basis_.end());
  return rank_of(both) == rank();
}

// ---- lattice operations ---------------------------------------------------

Sublattice kernel_lattice(const IntMatrix& a) {
  const std::size_t n = a.cols();
  auto snf = smith_normal_form(a);
  std::size_t r = 0;
  while (r < snf.diag.size() && snf.diag[r] != 0) ++r;
  std::vector<IntVector> basis;
  for (std::size_t j = r; j < n; ++j) basis.push_back(snf.right.col(j));
  return Sublattice(n, basis);
}

Sublattice saturate(const Sublattice& l) {
  if (l.saturated()) return l;
  const std::size_t n = l.ambient_rank();
  // Saturation = double orthogonal complement.
  Sublattice perp = kernel_lattice(l.basis_matrix());
  if (perp.rank() == 0) return Sublattice::full(n);
  return kernel_lattice(perp.basis_matrix());
}

IntMatrix quotient_lattice_map(const Sublattice& l) {
  if (!l.saturated())
    throw std::invalid_argument("quotient_lattice_map: sublattice is not saturated");
  const std::size_t n = l.ambient_rank();
  const std::size_t k = l.rank();
  if (k == 0) return IntMatrix::identity(n);
  auto snf = smith_normal_form(l.basis_matrix());
  // Rows of right^{-1} form a basis of Z^n whose first k rows span L; the
  // coordinates along the remaining rows are given by right^T.
  return snf.right.col_range(k, n).transpose();
}

CokernelInfo cokernel_diagnostics(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  CokernelInfo info;
  std::size_t r = 0;
  for (const auto& x : snf.diag) {
    if (x == 0) continue;
    ++r;
    if (x > 1) info.torsion.push_back(x);
  }
  info.free_rank = a.rows() - r;
  return info;
}

IntMatrix right_inverse(const IntMatrix& a) {
  const std::size_t m = a.rows();
  auto snf = smith_normal_form(a);
  for (std::size_t i = 0; i < m; ++i)
    if (i >= snf.diag.size() || snf.diag[i] != 1)
      throw std::invalid_argument("right_inverse: map is not surjective");
  return snf.right.col_range(0, m) * snf.left;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("unimodular_inverse: not square");
  auto snf = smith_normal_form(a);
  for (const auto& x : snf.diag)
    if (x != 1) throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
  return snf.right * snf.left;
}

}  // namespace toricq
