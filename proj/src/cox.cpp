#include "toricq/cox.hpp"

#include "toricq/random.hpp"

#include <algorithm>
#include <numeric>

namespace toricq {

namespace {

Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

bool meets(const RaySet& a, const IntVector& exps) {
  for (auto i : a)
    if (exps[i] != 0) return true;
  return false;
}

void check_exponents(const IntVector& a, std::size_t n, const char* what) {
  if (a.size() != n)
    throw std::invalid_argument(std::string(what) + ": exponent vector has length " +
                                std::to_string(a.size()) + ", expected " + std::to_string(n));
  for (const auto& x : a)
    if (x < 0) throw std::invalid_argument(std::string(what) + ": negative exponent");
}

Rational evaluate(const PolynomialSection& f, const std::vector<Rational>& x) {
  Rational sum = 0;
  for (const auto& [c, a] : f.terms) {
    Rational term = c;
    for (std::size_t i = 0; i < x.size() && term != 0; ++i)
      for (Integer k = 0; k < a[i]; ++k) term *= x[i];
    sum += term;
  }
  return sum;
}

Rational evaluate(const MonomialSection& f, const std::vector<Rational>& x) {
  return evaluate(PolynomialSection{{{Rational(1), f.exponents}}}, x);
}

Rational evaluate(const Section& s, const std::vector<Rational>& x) {
  return std::visit([&](const auto& f) { return evaluate(f, x); }, s);
}

// Point of the orbit of an orthant face: zero on the face's coordinates.
std::vector<Rational> orbit_point(const RaySet& face, std::size_t n, SeededRng* rng) {
  std::vector<Rational> x(n, Rational(1));
  for (std::size_t i = 0; i < n; ++i)
    if (rng) x[i] = rng->nonzero_rational();
  for (auto i : face) x[i] = 0;
  return x;
}

}  // namespace

IntVector ClassGroup::degree(const IntVector& a) const {
  IntVector d = degree_map.apply(a);
  for (std::size_t j = 0; j < torsion.size(); ++j)
    d[free_rank + j] = mod_nonneg(d[free_rank + j], torsion[j]);
  return d;
}

bool ClassGroup::is_zero(const IntVector& cls) const { return toricq::is_zero(cls); }

CoxPresentation cox_presentation(std::shared_ptr<const Fan> fan) {
  if (!fan) throw std::invalid_argument("cox_presentation: null fan");
  const std::size_t n = fan->rays().size();
  const std::size_t d = fan->dim();
  if (rank_of(fan->rays()) != d) throw std::invalid_argument("cox_presentation: rays do not span Q^d");
  if (n > 8) throw SizeGuardError("cox_presentation: more than 8 rays (orthant fan too large)");

  CoxPresentation p;
  p.source = fan;
  p.ray_matrix = IntMatrix::from_rows(d, fan->rays());

  const auto snf = smith_normal_form(p.ray_matrix);
  std::vector<IntVector> free_rows, torsion_rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= snf.diag.size() || snf.diag[i] == 0) {
      free_rows.push_back(snf.left.row(i));
    } else if (snf.diag[i] > 1) {
      IntVector r = snf.left.row(i);
      for (auto& x : r) x = mod_nonneg(x, snf.diag[i]);
      torsion_rows.push_back(r);
      p.grading.torsion.push_back(snf.diag[i]);
    }
  }
  free_rows = hermite_normal_form(n, free_rows);
  p.grading.free_rank = free_rows.size();
  std::vector<IntVector> rows = free_rows;
  rows.insert(rows.end(), torsion_rows.begin(), torsion_rows.end());
  p.grading.degree_map = IntMatrix::from_rows(n, rows);

  std::vector<IntVector> axes;
  for (std::size_t i = 0; i < n; ++i) axes.push_back(unit(n, i));
  RaySet all(n);
  std::iota(all.begin(), all.end(), 0);
  p.orthant = std::make_shared<const Fan>(n, axes, std::vector<RaySet>{all});

  p.lift.resize(fan->num_cones());
  for (std::size_t c = 0; c < fan->num_cones(); ++c) {
    const auto idx = p.orthant->index_of(fan->cone_rays(c));
    p.lift[c] = *idx;
    p.relevant.insert(*idx);
  }
  p.torus_cochar = kernel_lattice(p.ray_matrix.transpose());
  return p;
}

MonomialSection canonical_section(const CoxPresentation& p, const IntVector& a) {
  check_exponents(a, p.num_rays(), "canonical_section");
  return MonomialSection{a, p.grading.degree(a)};
}

ConeSet section_zero_set(const CoxPresentation& p, const MonomialSection& s) {
  ConeSet out;
  p.relevant.for_each([&](std::size_t c) {
    if (evaluate(s, orbit_point(p.orthant->cone_rays(c), p.num_rays(), nullptr)) == 0) out.insert(c);
  });
  return out;
}

ConeSet section_zero_image(const CoxPresentation& p, const MonomialSection& s) {
  const ConeSet zero = section_zero_set(p, s);
  ConeSet out;
  for (std::size_t c = 0; c < p.lift.size(); ++c)
    if (zero.contains(p.lift[c])) out.insert(c);
  return out;
}

ConeSet divisor_support(const CoxPresentation& p, const IntVector& a) {
  check_exponents(a, p.num_rays(), "divisor_support");
  ConeSet rays;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) rays.insert(*p.source->ray_cone(i));
  return star_closure(*p.source, rays);
}

ConeSet lift_open(const CoxPresentation& p, const ConeSet& u) {
  if (!is_face_closed(*p.source, u)) throw std::invalid_argument("lift_open: selection is not face-closed");
  ConeSet out;
  u.for_each([&](std::size_t c) { out.insert(p.lift[c]); });
  return out;
}

CokernelInfo isotropy(const CoxPresentation& p, std::size_t orthant_cone) {
  const std::size_t n = p.num_rays();
  const std::size_t f = p.grading.free_rank;
  const std::size_t t = p.grading.torsion.size();
  const RaySet& face = p.orthant->cone_rays(orthant_cone);
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(face.begin(), face.end(), i)) cols.push_back(p.grading.degree_map.col(i));
  for (std::size_t j = 0; j < t; ++j) {
    IntVector c(f + t, Integer(0));
    c[f + j] = p.grading.torsion[j];
    cols.push_back(c);
  }
  cols.push_back(IntVector(f + t, Integer(0)));
  return cokernel_diagnostics(IntMatrix::from_rows(f + t, cols).transpose());
}

Integer multiplicity(const Fan& f, std::size_t cone) {
  const RaySet& rs = f.cone_rays(cone);
  if (rs.empty()) return 1;
  std::vector<IntVector> rows;
  for (auto r : rs) rows.push_back(f.rays()[r]);
  const auto snf = smith_normal_form(IntMatrix::from_rows(f.dim(), rows));
  Integer m = 1;
  for (const auto& x : snf.diag) m *= x;
  return m;
}

QuotientEngine cox_quotient_engine(const CoxPresentation& p) {
  return QuotientEngine(normalize_action(p.orthant, p.torus_cochar.basis()));
}

RoundTripReport cox_round_trip(const CoxPresentation& p, const ConeSet& u) {
  return cox_round_trip(p, cox_quotient_engine(p), u);
}

RoundTripReport cox_round_trip(const CoxPresentation& p, const QuotientEngine& engine, const ConeSet& u) {
  RoundTripReport rep;
  const Fan& src = *p.source;
  const ConeSet u_hat = lift_open(p, u);
  if (!engine.admits_good_quotient(u_hat)) {
    rep.note = "lift has no good quotient";
    return rep;
  }
  rep.quotient_exists = true;
  const QuotientFan q = build_quotient_fan(engine, u_hat);
  rep.geometric = q.geometric;

  const IntMatrix rt = p.ray_matrix.transpose();
  if (q.projection.rows() != src.dim()) {
    rep.note = "quotient has rank " + std::to_string(q.projection.rows());
    return rep;
  }
  const IntMatrix phi = src.dim() == 0 ? IntMatrix(0, 0) : rt * right_inverse(q.projection);
  if (!(phi * q.projection == rt)) {
    rep.note = "quotient lattice does not map onto the ray lattice";
    return rep;
  }
  rep.lattice_index = src.dim() == 0 ? Integer(1) : Integer(abs(determinant(phi)));

  std::vector<std::size_t> ray_map;
  for (const auto& r : q.fan->rays()) {
    const IntVector img = make_primitive(phi.apply(r));
    const auto it = std::find(src.rays().begin(), src.rays().end(), img);
    if (it == src.rays().end()) {
      rep.note = "quotient ray maps to " + to_string(img) + ", not a ray of the fan";
      return rep;
    }
    ray_map.push_back(static_cast<std::size_t>(it - src.rays().begin()));
  }
  const auto maxc = maximal_members(src, u);
  if (q.charts.size() != maxc.size()) {
    rep.note = "different numbers of maximal cones";
    return rep;
  }
  for (const auto& [bar, chart] : q.charts) {
    RaySet rs;
    for (auto i : q.fan->cone_rays(bar)) rs.push_back(ray_map[i]);
    std::sort(rs.begin(), rs.end());
    const auto idx = src.index_of(rs);
    if (!idx || std::find(maxc.begin(), maxc.end(), *idx) == maxc.end()) {
      rep.note = "quotient cone is not a maximal cone of the selection";
      return rep;
    }
    if (p.lift[*idx] != chart) {
      rep.note = "chart of " + src.describe_cone(*idx) + " is not its lift";
      return rep;
    }
  }
  rep.reproduces = true;
  return rep;
}

Sublattice lifted_acting_lattice(const CoxPresentation& p, const Sublattice& l) {
  const IntMatrix rt = p.ray_matrix.transpose();
  const IntMatrix proj = quotient_lattice_map(l);
  if (proj.rows() == 0) return Sublattice::full(p.num_rays());
  return kernel_lattice(proj * rt);
}

WitnessReport verify_globally_defined(const CoxPresentation& p, const ConeSet& u_hat,
                                      const Sublattice& acting, const std::vector<Section>& family,
                                      std::uint64_t seed, std::size_t samples) {
  const std::size_t n = p.num_rays();
  if (acting.ambient_rank() != n) throw DimensionError("verify_globally_defined: acting lattice of wrong rank");
  if (!u_hat.is_subset_of(p.relevant))
    throw std::invalid_argument("verify_globally_defined: selection leaves the relevant locus");

  bool any_polynomial = false;
  for (const auto& s : family) {
    if (const auto* m = std::get_if<MonomialSection>(&s)) {
      check_exponents(m->exponents, n, "monomial section");
    } else {
      const auto& f = std::get<PolynomialSection>(s);
      if (f.terms.empty()) throw std::invalid_argument("polynomial section without terms");
      for (const auto& [c, a] : f.terms) check_exponents(a, n, "polynomial section");
      any_polynomial = true;
    }
  }

  WitnessReport rep;
  rep.pairs_sampled = any_polynomial;
  const ConeSet irrelevant = p.orthant->all_cones() - p.relevant;
  const ConeSet outside = p.relevant - u_hat;
  SeededRng rng(seed);

  // Points used to probe polynomial sections: the distinguished point and a
  // few random points of every orbit in a set.
  auto probe_vanishes = [&](const Section& s, const ConeSet& orbits) {
    bool all_zero = true;
    orbits.for_each([&](std::size_t c) {
      const RaySet& face = p.orthant->cone_rays(c);
      if (evaluate(s, orbit_point(face, n, nullptr)) != 0) all_zero = false;
      for (int k = 0; k < 4; ++k)
        if (evaluate(s, orbit_point(face, n, &rng)) != 0) all_zero = false;
    });
    return all_zero;
  };

  std::vector<ConeSet> nonvanishing;
  for (const auto& s : family) {
    SectionVerdict v;
    if (const auto* m = std::get_if<MonomialSection>(&s)) {
      v.homogeneous = true;
      ConeSet locus;
      p.relevant.for_each([&](std::size_t c) {
        if (!meets(p.orthant->cone_rays(c), m->exponents)) locus.insert(c);
      });
      const auto maxl = maximal_members(*p.orthant, locus);
      v.affine = maxl.size() == 1 ? SectionVerdict::Affine::Yes : SectionVerdict::Affine::No;
      v.contained = locus.is_subset_of(u_hat);
      nonvanishing.push_back(locus);
    } else {
      const auto& f = std::get<PolynomialSection>(s);
      v.polynomial = true;
      v.homogeneous = true;
      for (const auto& [c, a] : f.terms) {
        IntVector diff = combine(1, a, -1, f.terms.front().second);
        for (const auto& l : acting.basis())
          if (dot(diff, l) != 0) v.homogeneous = false;
        if (!p.grading.is_zero(p.grading.degree(diff))) v.homogeneous = false;
      }
      v.affine = probe_vanishes(s, irrelevant) ? SectionVerdict::Affine::SampledYes
                                               : SectionVerdict::Affine::SampledNo;
      v.contained = probe_vanishes(s, outside);
      nonvanishing.emplace_back();
    }
    rep.members.push_back(v);
  }
  if (any_polynomial)
    rep.notes.push_back("polynomial sections: affineness is not combinatorially decidable; "
                        "checked on sample points only");

  const auto orbits = u_hat.members();
  if (!any_polynomial) {
    for (std::size_t i = 0; i < orbits.size(); ++i)
      for (std::size_t j = i; j < orbits.size(); ++j) {
        ++rep.pairs_checked;
        for (const auto& locus : nonvanishing)
          if (locus.contains(orbits[i]) && locus.contains(orbits[j])) {
            ++rep.pairs_covered;
            break;
          }
      }
  } else if (!orbits.empty()) {
    auto covered = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
      for (const auto& s : family)
        if (evaluate(s, x) != 0 && evaluate(s, y) != 0) return true;
      return false;
    };
    for (std::size_t i = 0; i < orbits.size(); ++i)
      for (std::size_t j = i; j < orbits.size(); ++j) {
        ++rep.pairs_checked;
        if (covered(orbit_point(p.orthant->cone_rays(orbits[i]), n, nullptr),
                    orbit_point(p.orthant->cone_rays(orbits[j]), n, nullptr)))
          ++rep.pairs_covered;
      }
    for (std::size_t k = 0; k < samples; ++k) {
      const auto a = orbits[rng.below(orbits.size())];
      const auto b = orbits[rng.below(orbits.size())];
      ++rep.pairs_checked;
      if (covered(orbit_point(p.orthant->cone_rays(a), n, &rng), orbit_point(p.orthant->cone_rays(b), n, &rng)))
        ++rep.pairs_covered;
    }
  }

  rep.witness = rep.pairs_checked == rep.pairs_covered;
  for (const auto& v : rep.members)
    if (!v.homogeneous || !v.contained ||
        (v.affine != SectionVerdict::Affine::Yes && v.affine != SectionVerdict::Affine::SampledYes))
      rep.witness = false;
  return rep;
}

std::string to_string(SectionVerdict::Affine a) {
  switch (a) {
    case SectionVerdict::Affine::Yes: return "affine";
    case SectionVerdict::Affine::No: return "not affine";
    case SectionVerdict::Affine::SampledYes: return "affine (sampled)";
    case SectionVerdict::Affine::SampledNo: return "not affine (sampled)";
  }
  return "?";
}

}  // namespace toricq
