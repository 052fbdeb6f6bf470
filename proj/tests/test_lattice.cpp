#include "fixtures.hpp"
#include "toricq/lattice.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace toricq;
using fixtures::iv;
using fixtures::mat;

namespace {

// Determinantal divisors: d_k = gcd of all k x k minors. The Smith diagonal is
// d_k / d_{k-1}. Computed by brute force, independently of any elimination.
std::vector<Integer> smith_by_minors(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    Integer g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    std::vector<bool> rsel(m, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        IntMatrix sub(k, k);
        std::size_t r = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (!rsel[i]) continue;
          std::size_t c = 0;
          for (std::size_t j = 0; j < n; ++j)
            if (csel[j]) sub(r, c++) = a(i, j);
          ++r;
        }
        Integer det = determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(prev == 0 ? Integer(0) : Integer(g / prev));
    prev = g;
  }
  return out;
}

IntMatrix diagonal(std::size_t m, std::size_t n, const std::vector<Integer>& d) {
  IntMatrix out(m, n);
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
  return a;
}

}  // namespace

TEST_CASE("smith normal form of the identity") {
  const auto s = smith_normal_form(IntMatrix::identity(2));
  CHECK(s.diag == std::vector<Integer>{1, 1});
  CHECK(s.left * IntMatrix::identity(2) * s.right == IntMatrix::identity(2));
}

TEST_CASE("smith normal form examples against determinantal divisors") {
  const auto a = mat(2, {{2, 0}, {0, 3}});
  const auto b = mat(2, {{1, 2}, {3, 4}});
  CHECK(smith_by_minors(a) == std::vector<Integer>{1, 6});
  CHECK(smith_by_minors(b) == std::vector<Integer>{1, 2});
  CHECK(smith_normal_form(a).diag == std::vector<Integer>{1, 6});
  CHECK(smith_normal_form(b).diag == std::vector<Integer>{1, 2});
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const IntMatrix a = random_matrix(rng, m, n);
    const auto s = smith_normal_form(a);
    REQUIRE(s.diag.size() == std::min(m, n));
    CHECK(s.left * a * s.right == diagonal(m, n, s.diag));
    CHECK(abs(determinant(s.left)) == 1);
    CHECK(abs(determinant(s.right)) == 1);
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
      CHECK(s.diag[i] >= 0);
      if (s.diag[i + 1] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
      else CHECK((s.diag[i] == 0 || s.diag[i + 1] == 0));
    }
    if (trial < 200) CHECK(s.diag == smith_by_minors(a));
  }
}

TEST_CASE("kernel lattice") {
  SUBCASE("row (1,1)") {
    const auto k = kernel_lattice(mat(2, {{1, 1}}));
    REQUIRE(k.rank() == 1);
    CHECK(k.saturated());
    const auto& v = k.basis().front();
    CHECK((v == iv({1, -1}) || v == iv({-1, 1})));
    // every small solution is an integer multiple of the basis vector
    for (long a = -6; a <= 6; ++a)
      for (long b = -6; b <= 6; ++b)
        if (a + b == 0) CHECK(k.contains(iv({a, b})));
  }
  SUBCASE("identity") { CHECK(kernel_lattice(IntMatrix::identity(3)).rank() == 0); }
  SUBCASE("zero 1x2 matrix") {
    const auto k = kernel_lattice(IntMatrix(1, 2));
    CHECK(k == Sublattice::full(2));
  }
}

TEST_CASE("kernel lattice properties on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const IntMatrix a = random_matrix(rng, m, n);
    const auto k = kernel_lattice(a);
    CHECK(k.saturated());
    CHECK(k.rank() == n - rank_of(a));
    for (const auto& v : k.basis()) CHECK(is_zero(a.apply(v)));
  }
}

TEST_CASE("saturate") {
  const Sublattice l(2, {iv({2, 2})});
  CHECK_FALSE(l.saturated());
  const auto s = saturate(l);
  CHECK(s == Sublattice(2, {iv({1, 1})}));
  CHECK(s.saturated());
  CHECK(saturate(s) == s);
  CHECK(saturate(Sublattice::zero(3)) == Sublattice::zero(3));
}

TEST_CASE("saturate is idempotent and extensive") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntVector> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(iv({entry(rng), entry(rng), entry(rng)}));
    const Sublattice l(3, gens);
    const auto s = saturate(l);
    CHECK(saturate(s) == s);
    CHECK(s.same_span(l));
    for (const auto& v : l.basis()) CHECK(s.contains(v));
  }
}

TEST_CASE("quotient lattice map") {
  SUBCASE("diagonal line") {
    const Sublattice l(2, {iv({1, 1})});
    const auto p = quotient_lattice_map(l);
    REQUIRE(p.rows() == 1);
    CHECK(kernel_lattice(p) == l);
    // surjective: Smith diagonal is all ones
    CHECK(smith_normal_form(p).diag == std::vector<Integer>{1});
    const auto img = p.apply(iv({1, 0}));
    CHECK(abs(img[0]) == 1);
  }
  SUBCASE("zero lattice") {
    const auto p = quotient_lattice_map(Sublattice::zero(2));
    CHECK(abs(determinant(p)) == 1);
  }
  SUBCASE("full lattice") { CHECK(quotient_lattice_map(Sublattice::full(2)).rows() == 0); }
  SUBCASE("unsaturated input is rejected") {
    CHECK_THROWS_AS(quotient_lattice_map(Sublattice(2, {iv({2, 2})})), std::invalid_argument);
  }
}

TEST_CASE("quotient map round trip on random saturated lattices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntVector> gens;
    const int k = trial % 3;
    for (int g = 0; g < k; ++g) gens.push_back(iv({entry(rng), entry(rng), entry(rng), entry(rng)}));
    const auto l = saturate(Sublattice(4, gens));
    const auto p = quotient_lattice_map(l);
    CHECK(p.rows() == 4 - l.rank());
    CHECK(kernel_lattice(p) == l);
    for (const auto& x : smith_normal_form(p).diag) CHECK(x == 1);
  }
}

TEST_CASE("cokernel diagnostics") {
  SUBCASE("ray pairing of the projective plane") {
    const auto rays = mat(2, {{1, 0}, {0, 1}, {-1, -1}});
    const auto c = cokernel_diagnostics(rays);
    CHECK(c.free_rank == 1);
    CHECK(c.torsion.empty());
  }
  SUBCASE("identity") {
    const auto c = cokernel_diagnostics(IntMatrix::identity(2));
    CHECK(c.free_rank == 0);
    CHECK(c.torsion.empty());
  }
  SUBCASE("[[2]]") {
    const auto c = cokernel_diagnostics(mat(1, {{2}}));
    CHECK(c.free_rank == 0);
    CHECK(c.torsion == std::vector<Integer>{2});
  }
}

TEST_CASE("right and unimodular inverses") {
  const auto p = mat(3, {{1, 2, 3}, {0, 1, 4}});
  const auto s = right_inverse(p);
  CHECK(p * s == IntMatrix::identity(2));
  const auto u = mat(2, {{2, 1}, {1, 1}});
  CHECK(u * unimodular_inverse(u) == IntMatrix::identity(2));
  CHECK_THROWS(unimodular_inverse(mat(2, {{2, 0}, {0, 1}})));
}
