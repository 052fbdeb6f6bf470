#include "fixtures.hpp"
#include "toricq/corpus.hpp"
#include "toricq/cox.hpp"
#include "toricq/random.hpp"

#include <doctest.h>

using namespace toricq;
using namespace fixtures;

namespace {

// Primitive weight vectors w in a small box with sum_i w_i v_i = 0: the
// relations among the rays, found by search.
std::vector<IntVector> small_relations(const Fan& f, long box) {
  const std::size_t n = f.rays().size();
  std::vector<IntVector> out;
  IntVector w(n, Integer(-box));
  while (true) {
    bool rel = !is_zero(w) && content(w) == 1;
    for (std::size_t j = 0; j < f.dim() && rel; ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < n; ++i) s += w[i] * f.rays()[i][j];
      if (s != 0) rel = false;
    }
    if (rel) out.push_back(w);
    std::size_t k = 0;
    while (k < n && w[k] == box) w[k++] = -box;
    if (k == n) break;
    ++w[k];
  }
  return out;
}

ConeSet sel(const Fan& f, std::initializer_list<RaySet> ray_sets) {
  ConeSet s;
  for (const auto& r : ray_sets) s.insert(*f.index_of(r));
  return s;
}

}  // namespace

TEST_CASE("class group of the projective plane") {
  const auto p = cox_presentation(p2());
  CHECK(p.grading.free_rank == 1);
  CHECK(p.grading.torsion.empty());
  CHECK(p.grading.degree_map.row(0) == iv({1, 1, 1}));
  const auto rels = small_relations(*p2(), 3);
  CHECK(std::find(rels.begin(), rels.end(), p.grading.degree_map.row(0)) != rels.end());
  // relevant locus: every orthant face except the full one
  CHECK(p.relevant.size() == 7);
  CHECK_FALSE(p.relevant.contains(*p.orthant->index_of({0, 1, 2})));
}

TEST_CASE("class group of the weighted projective plane P(1,1,2)") {
  const auto p = cox_presentation(p112());
  CHECK(p.grading.free_rank == 1);
  CHECK(p.grading.torsion.empty());
  CHECK(p.grading.degree_map.row(0) == iv({1, 2, 1}));
  // relation rows (1,0,-1) and (0,1,-2) in the dual: the weights pair to zero
  // with the transposed ray matrix
  const auto rels = small_relations(*p112(), 2);
  CHECK(std::find(rels.begin(), rels.end(), iv({1, 2, 1})) != rels.end());
}

TEST_CASE("class group of the plane and of a torsion example") {
  const auto p = cox_presentation(c2());
  CHECK(p.grading.free_rank == 0);
  CHECK(p.grading.torsion.empty());
  CHECK(p.relevant == p.orthant->all_cones());

  // rays (1,0) and (1,2): Cl = Z/2
  const auto f = make_fan(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}});
  const auto q = cox_presentation(f);
  CHECK(q.grading.free_rank == 0);
  CHECK(q.grading.torsion == std::vector<Integer>{2});
  CHECK_THROWS_AS(cox_presentation(make_fan(2, {iv({1, 0})}, {{0}})), std::invalid_argument);
}

TEST_CASE("the grading sequence is exact") {
  SeededRng rng(99);
  for (const auto& cf : sweep_fans()) {
    const auto p = cox_presentation(cf.fan);
    const std::size_t n = p.num_rays();
    const std::size_t d = cf.fan->dim();
    CHECK(p.grading.free_rank == n - d);
    // degree of every character image vanishes
    for (std::size_t j = 0; j < d; ++j) CHECK(is_zero(p.grading.degree(p.ray_matrix.col(j))));
    // degree vanishes only on the image of M
    const Sublattice image(n, p.ray_matrix.transpose().row_list());
    for (int k = 0; k < 30; ++k) {
      IntVector a;
      for (std::size_t i = 0; i < n; ++i) a.emplace_back(rng.between(-3, 3));
      CHECK(is_zero(p.grading.degree(a)) == image.contains(a));
    }
    // surjective: the degree map has a full-rank Smith form on the free part
    const auto snf = smith_normal_form(p.grading.degree_map.row_range(0, p.grading.free_rank));
    for (const auto& x : snf.diag) CHECK(x == 1);
  }
}

TEST_CASE("canonical sections") {
  const auto f = p2();
  const auto p = cox_presentation(f);
  SUBCASE("one coordinate") {
    const auto s = canonical_section(p, iv({1, 0, 0}));
    CHECK(s.degree == iv({1}));
    CHECK(section_zero_image(p, s) == f->star_of(*f->ray_cone(0)));
  }
  SUBCASE("unit section") {
    const auto s = canonical_section(p, iv({0, 0, 0}));
    CHECK(section_zero_set(p, s).empty());
  }
  SUBCASE("two coordinate lines") {
    const auto s = canonical_section(p, iv({1, 1, 0}));
    const auto image = section_zero_image(p, s);
    CHECK(image == (f->star_of(*f->ray_cone(0)) | f->star_of(*f->ray_cone(1))));
    // the complement is the open set of the remaining ray
    CHECK(f->all_cones() - image == sel(*f, {{}, {2}}));
  }
  CHECK_THROWS_AS(canonical_section(p, iv({-1, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(canonical_section(p, iv({1, 0})), std::invalid_argument);
}

TEST_CASE("zero sets of canonical sections are preimages of supports") {
  SeededRng rng(2024);
  for (const auto& cf : sweep_fans()) {
    const auto p = cox_presentation(cf.fan);
    for (int k = 0; k < 100; ++k) {
      IntVector a;
      for (std::size_t i = 0; i < p.num_rays(); ++i) a.emplace_back(rng.between(0, 2));
      const auto s = canonical_section(p, a);
      CHECK(section_zero_image(p, s) == divisor_support(p, a));
      ConeSet lifted;
      divisor_support(p, a).for_each([&](std::size_t c) { lifted.insert(p.lift[c]); });
      CHECK(section_zero_set(p, s) == lifted);
    }
  }
}

TEST_CASE("lift_open") {
  const auto f = p2();
  const auto p = cox_presentation(f);
  CHECK(lift_open(p, f->all_cones()) == p.relevant);
  const auto chart = *f->index_of({0, 1});
  CHECK(lift_open(p, f->faces_of(chart)) == p.orthant->faces_of(*p.orthant->index_of({0, 1})));
  CHECK(lift_open(p, ConeSet{}).empty());
}

TEST_CASE("isotropy of the quasitorus") {
  SUBCASE("smooth: trivial everywhere") {
    const auto p = cox_presentation(p2());
    p.relevant.for_each([&](std::size_t c) {
      const auto iso = isotropy(p, c);
      CHECK(iso.free_rank == 0);
      CHECK(iso.torsion.empty());
    });
  }
  SUBCASE("P(1,1,2) has a Z/2") {
    const auto f = p112();
    const auto p = cox_presentation(f);
    const auto iso = isotropy(p, p.lift[*f->index_of({0, 2})]);
    CHECK(iso.free_rank == 0);
    CHECK(iso.torsion == std::vector<Integer>{2});
  }
  SUBCASE("finite on the corpus, order equals multiplicity, trivial iff smooth") {
    for (const auto& cf : sweep_fans()) {
      const auto p = cox_presentation(cf.fan);
      bool all_trivial = true;
      for (std::size_t c = 0; c < cf.fan->num_cones(); ++c) {
        const auto iso = isotropy(p, p.lift[c]);
        CHECK(iso.free_rank == 0);
        Integer order = 1;
        for (const auto& t : iso.torsion) order *= t;
        CHECK(order == multiplicity(*cf.fan, c));
        if (order != 1) all_trivial = false;
      }
      CHECK(all_trivial == is_smooth(*cf.fan));
    }
  }
}

TEST_CASE("round trip through the Cox quotient") {
  for (const auto& cf : sweep_fans()) {
    const auto p = cox_presentation(cf.fan);
    const auto engine = cox_quotient_engine(p);
    for (const auto& u : enumerate_open_subsets(*cf.fan)) {
      const auto rt = cox_round_trip(p, engine, u);
      CHECK_MESSAGE(rt.reproduces, cf.name << ": " << rt.note);
      CHECK(rt.geometric);
    }
  }
}

TEST_CASE("globally defined families") {
  SUBCASE("coordinates of the projective plane") {
    const auto p = cox_presentation(p2());
    const auto acting = lifted_acting_lattice(p, Sublattice::zero(2));
    CHECK(acting == p.torus_cochar);
    std::vector<Section> fam;
    for (std::size_t i = 0; i < 3; ++i) {
      IntVector a(3, Integer(0));
      a[i] = 1;
      fam.emplace_back(canonical_section(p, a));
    }
    const auto rep = verify_globally_defined(p, p.relevant, acting, fam, 1);
    for (const auto& m : rep.members) {
      CHECK(m.homogeneous);
      CHECK(m.affine == SectionVerdict::Affine::Yes);
      CHECK(m.contained);
    }
    CHECK(rep.pairs_covered < rep.pairs_checked);
    CHECK_FALSE(rep.witness);
  }
  SUBCASE("unit section on an affine set") {
    const auto f = c2();
    const auto p = cox_presentation(f);
    const auto rep = verify_globally_defined(p, p.relevant, lifted_acting_lattice(p, Sublattice::zero(2)),
                                             {canonical_section(p, iv({0, 0}))}, 1);
    CHECK(rep.witness);
  }
  SUBCASE("punctured plane with the diagonal subtorus") {
    const auto p = cox_presentation(c2());
    const auto acting = lifted_acting_lattice(p, Sublattice(2, {iv({1, 1})}));
    const ConeSet u_hat = lift_open(p, sel(*c2(), {{}, {0}, {1}}));
    std::vector<Section> fam{canonical_section(p, iv({1, 0})), canonical_section(p, iv({0, 1}))};
    const auto rep = verify_globally_defined(p, u_hat, acting, fam, 1);
    for (const auto& m : rep.members) {
      CHECK(m.affine == SectionVerdict::Affine::Yes);
      CHECK(m.contained);
    }
    CHECK_FALSE(rep.witness);

    fam.emplace_back(PolynomialSection{{{Rational(1), iv({1, 0})}, {Rational(-1), iv({0, 1})}}});
    const auto rep2 = verify_globally_defined(p, u_hat, acting, fam, 7);
    CHECK(rep2.members.back().homogeneous);
    CHECK(rep2.members.back().affine == SectionVerdict::Affine::SampledYes);
    CHECK(rep2.pairs_sampled);
    CHECK(rep2.witness);

    // z1^2 - z2 is not homogeneous for the diagonal weights
    const std::vector<Section> bad{PolynomialSection{{{Rational(1), iv({2, 0})}, {Rational(-1), iv({0, 1})}}}};
    CHECK_FALSE(verify_globally_defined(p, u_hat, acting, bad, 1).members.front().homogeneous);
  }
  SUBCASE("malformed sections") {
    const auto p = cox_presentation(c2());
    const std::vector<Section> bad{PolynomialSection{}};
    CHECK_THROWS_AS(verify_globally_defined(p, p.relevant, p.torus_cochar, bad, 1), std::invalid_argument);
  }
}
