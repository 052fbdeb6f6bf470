#include "fixtures.hpp"
#include "toricq/corpus.hpp"
#include "toricq/oracles.hpp"
#include "toricq/symmetry.hpp"

#include <doctest.h>

#include <algorithm>

using namespace toricq;
using namespace fixtures;

namespace {

ConeSet cones_of(const Fan& f, std::initializer_list<RaySet> ray_sets) {
  ConeSet s;
  for (const auto& r : ray_sets) s.insert(*f.index_of(r));
  return s;
}

// Moves each cone by applying the matrix to its rays and looking the image up.
ConeSet moved(const Fan& f, const IntMatrix& m, const ConeSet& u) {
  ConeSet out;
  u.for_each([&](std::size_t c) {
    RaySet img;
    for (auto r : f.cone_rays(c)) {
      const IntVector v = m.apply(f.rays()[r]);
      const auto it = std::find(f.rays().begin(), f.rays().end(), v);
      REQUIRE(it != f.rays().end());
      img.push_back(static_cast<std::size_t>(it - f.rays().begin()));
    }
    std::sort(img.begin(), img.end());
    out.insert(*f.index_of(img));
  });
  return out;
}

FanAutomorphism element_with_rays(const Fan& f, const std::vector<std::size_t>& perm) {
  for (const auto& a : fan_automorphisms(f))
    if (a.ray_permutation == perm) return a;
  throw std::logic_error("no such automorphism");
}

GroupActionData full_torus(std::shared_ptr<const Fan> f, const std::vector<IntMatrix>& sym) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < f->dim(); ++i) {
    IntVector e(f->dim(), Integer(0));
    e[i] = 1;
    gens.push_back(e);
  }
  return GroupActionData(normalize_action(f, gens), SymmetryGroup::generated_by(f, sym));
}

}  // namespace

TEST_CASE("translate") {
  const auto f = p1();
  const auto neg = mat(1, {{-1}});
  const auto c = SubfanSelection::generated_by(f, {*f->ray_cone(0)});
  const auto c_minus = SubfanSelection::generated_by(f, {*f->ray_cone(1)});
  CHECK(translate(neg, c) == c_minus);
  CHECK(translate(IntMatrix::identity(1), c) == c);
  CHECK(translate(neg, translate(neg, c)) == c);
  CHECK_THROWS_AS(translate(mat(1, {{2}}), c), std::invalid_argument);

  const auto p = p2();
  const auto rot = element_with_rays(*p, {1, 2, 0});
  const auto chart01 = SubfanSelection::generated_by(p, {*p->index_of({0, 1})}).cones();
  CHECK(translate(rot, chart01) == SubfanSelection::generated_by(p, {*p->index_of({1, 2})}).cones());
}

TEST_CASE("translate agrees with moving rays") {
  for (const auto& f : {p1(), p2(), p1xp1(), p112(), c2()})
    for (const auto& a : fan_automorphisms(*f))
      for (const auto& u : enumerate_open_subsets(*f)) {
        const auto t = translate(a, u);
        CHECK(t == moved(*f, a.matrix, u));
        CHECK(is_face_closed(*f, t));
      }
}

TEST_CASE("symmetry groups") {
  const auto p = p2();
  const auto rot = element_with_rays(*p, {1, 2, 0});
  CHECK(SymmetryGroup::generated_by(p, {rot.matrix}).order() == 3);
  CHECK(SymmetryGroup::trivial(p).is_trivial());
  const auto all = SymmetryGroup::generated_by(p, {rot.matrix, element_with_rays(*p, {1, 0, 2}).matrix});
  CHECK(all.order() == 6);
  CHECK(all.elements().front().matrix == IntMatrix::identity(2));
  CHECK_THROWS_AS(SymmetryGroup::generated_by(p, {mat(2, {{1, 1}, {0, 1}})}), std::invalid_argument);
}

TEST_CASE("compatibility with the subtorus") {
  const auto f = p1xp1();
  const auto act = normalize_action(f, {iv({1, 0})});
  CHECK_THROWS_AS(GroupActionData(act, SymmetryGroup::generated_by(f, {mat(2, {{0, 1}, {1, 0}})})),
                  std::invalid_argument);
  CHECK_NOTHROW(GroupActionData(act, SymmetryGroup::generated_by(f, {mat(2, {{-1, 0}, {0, 1}})})));
  CHECK_NOTHROW(GroupActionData(act, SymmetryGroup::generated_by(f, {mat(2, {{1, 0}, {0, -1}})})));
}

TEST_CASE("w_set examples") {
  const auto f = p1();
  const auto swap = SymmetryGroup::generated_by(f, {mat(1, {{-1}})});
  const auto c = SubfanSelection::generated_by(f, {*f->ray_cone(0)}).cones();
  CHECK(w_set(swap, c) == cones_of(*f, {{}}));
  CHECK(w_set(SymmetryGroup::trivial(f), c) == c);
  CHECK(w_set(swap, f->all_cones()) == f->all_cones());
}

TEST_CASE("w_set is idempotent, invariant, monotone and fixes invariant sets") {
  for (const auto& f : {p1(), p2(), p1xp1(), p112(), c2()}) {
    const auto autos = fan_automorphisms(*f);
    std::vector<SymmetryGroup> groups{SymmetryGroup::trivial(f)};
    for (const auto& a : autos) groups.push_back(SymmetryGroup::generated_by(f, {a.matrix}));
    const auto opens = enumerate_open_subsets(*f);
    for (const auto& g : groups)
      for (const auto& u : opens) {
        const auto w = w_set(g, u);
        CHECK(w_set(g, w) == w);
        CHECK(is_invariant(g, w));
        CHECK(is_face_closed(*f, w));
        if (is_invariant(g, u)) CHECK(w == u);
        for (const auto& v : opens)
          if (u.is_subset_of(v)) CHECK(w.is_subset_of(w_set(g, v)));
      }
  }
}

TEST_CASE("composite fibres separate disjoint closed invariant sets") {
  for (const auto& f : {p1(), p2(), p1xp1(), p112()})
    for (const auto& line : sweep_lines(f->dim())) {
      const auto act = normalize_action(f, {line});
      for (const auto& a : fan_automorphisms(*f)) {
        if (!preserves_lattice(a, act.cochar)) continue;
        const GroupActionData g(act, SymmetryGroup::generated_by(f, {a.matrix}));
        for (const auto& w : enumerate_good_subsets(g.engine())) {
          if (!is_invariant(g.sym(), w)) continue;
          const CompositeFibres fib(g, w);
          CHECK(fib.is_saturated(ConeSet{}));
          CHECK(fib.is_saturated(w));
          std::vector<ConeSet> closed;
          w.for_each([&](std::size_t t) {
            ConeSet orbit;
            for (const auto& e : g.sym().elements()) orbit.insert(e.cone_permutation[t]);
            closed.push_back(star_closure(*f, orbit) & w);
          });
          for (const auto& x : closed)
            for (const auto& y : closed)
              if (!x.intersects(y)) CHECK_FALSE(fib.keys(x).intersects(fib.keys(y)));
        }
      }
    }
}

TEST_CASE("theorem conclusions on the projective line with the ray swap") {
  const auto f = p1();
  const auto g = full_torus(f, {mat(1, {{-1}})});
  const auto c = SubfanSelection::generated_by(f, {*f->ray_cone(0)}).cones();
  const auto rep = verify_theorem_conclusions(g, c);
  REQUIRE_FALSE(rep.refused);
  CHECK(rep.w == cones_of(*f, {{}}));
  CHECK(rep.open);
  CHECK(rep.good);
  CHECK(rep.quotient_cones == 1);
  CHECK_FALSE(rep.saturated);
  CHECK_FALSE(rep.connected);
  CHECK_FALSE(rep.caveats.empty());
  CHECK_FALSE(rep.conclusions_hold());
}

TEST_CASE("theorem conclusions refuse non-maximal selections") {
  const auto f = p1();
  const auto g = full_torus(f, {});
  const auto rep = verify_theorem_conclusions(g, f->all_cones());
  CHECK(rep.refused);
  CHECK(rep.diagnosis.find("no good quotient") != std::string::npos);
  CHECK(verify_theorem_conclusions(g, ConeSet{}).refused);
}

TEST_CASE("theorem conclusions with trivial symmetry hold on every maximal selection") {
  for (const auto& f : {p1(), p2(), p1xp1(), p112(), c2(), c2_punctured()})
    for (const auto& line : sweep_lines(f->dim())) {
      const GroupActionData g(normalize_action(f, {line}), SymmetryGroup::trivial(f));
      const auto maxs = t_maximal_subsets(g.engine(), 2);
      for (const auto& u : maxs) {
        const auto rep = verify_theorem_conclusions(g, u, maxs);
        CHECK(rep.w == u);
        CHECK(rep.conclusions_hold());
        CHECK(rep.caveats.empty());
        for (const auto& orbit : rep.class_orbits) CHECK(orbit.size() == 1);
      }
    }
}

TEST_CASE("theorem verdicts on P1xP1 agree with the invariant oracle") {
  const auto f = p1xp1();
  const GroupActionData g(normalize_action(f, {iv({1, 0})}),
                          SymmetryGroup::generated_by(f, {mat(2, {{-1, 0}, {0, 1}})}));
  const InvariantOracle oracle(*f, g.act().cochar);
  const auto maxs = t_maximal_subsets(g.engine(), 2);
  auto brute = brute_force_t_maximal(oracle, *f);
  auto sorted = maxs;
  std::sort(sorted.begin(), sorted.end());
  std::sort(brute.begin(), brute.end());
  CHECK(sorted == brute);
  REQUIRE_FALSE(maxs.empty());
  for (const auto& u : maxs) {
    const auto rep = verify_theorem_conclusions(g, u, maxs);
    REQUIRE_FALSE(rep.refused);
    CHECK(rep.good == oracle.admits_good_quotient(rep.w));
    if (rep.good) CHECK(rep.saturated == oracle.is_saturated(rep.w, u));
    CHECK_FALSE(rep.connected);
  }
}

TEST_CASE("corollary on small fans") {
  {
    const auto f = p1();
    const auto rep = verify_corollary(full_torus(f, {}));
    CHECK(rep.maximal.size() == 3);
    for (const auto& m : rep.maximal) CHECK(m.theorem.w == m.theorem.u);
    CHECK(rep.ok());
    const auto it = std::find_if(rep.invariant.begin(), rep.invariant.end(),
                                 [](const auto& e) { return e.v.empty(); });
    REQUIRE(it != rep.invariant.end());
    CHECK(it->ok);
  }
  {
    const auto f = p2();
    const auto rot = element_with_rays(*f, {1, 2, 0});
    const GroupActionData g(normalize_action(f, {}), SymmetryGroup::generated_by(f, {rot.matrix}));
    const auto rep = verify_corollary(g);
    REQUIRE(rep.maximal.size() == 1);
    CHECK(rep.maximal[0].theorem.w == f->all_cones());
    CHECK(rep.ok());
    // Invariant opens of P^2 under rotation: empty, torus, torus + rays, all.
    CHECK(rep.invariant.size() == 4);
  }
  CHECK_THROWS_AS(verify_corollary(full_torus(c2(), {})), std::invalid_argument);
}

TEST_CASE("eq1 crosscheck examples") {
  const auto f = p1();
  const auto g = full_torus(f, {});
  const auto x_prime = SubfanSelection::generated_by(f, {*f->ray_cone(0)}).cones();
  const auto rep = eq1_crosscheck(g, x_prime, cones_of(*f, {{}}));
  REQUIRE(rep.hypotheses_hold());
  CHECK(rep.u.empty());
  CHECK(rep.left.empty());
  CHECK(rep.right.empty());
  CHECK(rep.equal);

  const auto bad = eq1_crosscheck(g, f->all_cones(), cones_of(*f, {{}}));
  CHECK_FALSE(bad.x_prime_good);
  CHECK_FALSE(bad.hypotheses_hold());
}

TEST_CASE("eq1 crosscheck with trivial symmetry reduces to the saturated part") {
  for (const auto& f : {p1(), p2(), p1xp1(), p112()})
    for (const auto& line : sweep_lines(f->dim())) {
      const GroupActionData g(normalize_action(f, {line}), SymmetryGroup::trivial(f));
      const auto opens = enumerate_open_subsets(*f);
      for (const auto& xp : enumerate_good_subsets(g.engine())) {
        const Eq1Checker checker(g, xp);
        for (const auto& x : opens) {
          if (!x.is_subset_of(xp)) continue;
          const auto rep = checker.check(x);
          REQUIRE(rep.hypotheses_hold());
          CHECK(rep.left == rep.u);
          CHECK(rep.right == rep.u);
          CHECK(rep.equal);
          CHECK(rep.w_b_identity);
        }
      }
    }
}

TEST_CASE("eq1 crosscheck with symmetries on small fans") {
  std::size_t checked = 0;
  for (const auto& f : {p1(), p2(), p1xp1(), p112()})
    for (const auto& line : sweep_lines(f->dim())) {
      const auto act = normalize_action(f, {line});
      for (const auto& a : fan_automorphisms(*f)) {
        if (!preserves_lattice(a, act.cochar)) continue;
        const GroupActionData g(act, SymmetryGroup::generated_by(f, {a.matrix}));
        const auto opens = enumerate_open_subsets(*f);
        for (const auto& xp : enumerate_good_subsets(g.engine())) {
          const Eq1Checker checker(g, xp);
          for (const auto& x : opens) {
            if (!x.is_subset_of(xp)) continue;
            const auto rep = checker.check(x);
            if (!rep.hypotheses_hold()) continue;
            ++checked;
            CHECK(rep.w_b_identity);
            CHECK_MESSAGE(rep.equal, (rep.witness ? f->describe_cone(*rep.witness) : std::string()));
          }
        }
      }
    }
  CHECK(checked > 0);
}
