#include "toricq/quotient.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace toricq {

SubtorusAction normalize_action(std::shared_ptr<const Fan> fan,
                                const std::vector<IntVector>& cochar_generators) {
  if (!fan) throw std::invalid_argument("normalize_action: null fan");
  const std::size_t d = fan->dim();
  for (const auto& g : cochar_generators)
    if (g.size() != d) throw DimensionError("normalize_action: generator of wrong length");
  Sublattice span(d, cochar_generators);
  SubtorusAction act;
  act.fan = std::move(fan);
  act.input_saturated = span.saturated();
  act.cochar = span.saturated() ? span : saturate(span);
  act.projection = quotient_lattice_map(act.cochar);
  return act;
}

QuotientEngine::QuotientEngine(SubtorusAction action) : action_(std::move(action)) {
  const Fan& f = *action_.fan;
  const std::size_t n = f.num_cones();
  if (n > ConeSet::kCapacity)
    throw SizeGuardError("QuotientEngine: fan has more than " +
                         std::to_string(ConeSet::kCapacity) + " cones");
  images_.reserve(n);
  image_class_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    images_.push_back(image_cone(f.cone(i), action_.projection));
    image_class_[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (image_class_[j] == j && images_[j] == images_[i]) {
        image_class_[i] = j;
        break;
      }
  }

  maps_into_.assign(n, ConeSet{});
  image_faces_.assign(n, ConeSet{});
  compatible_.assign(n, ConeSet{});
  same_lineality_.assign(n, ConeSet{});

  // Pairwise relations are computed on class representatives only.
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i)
    if (image_class_[i] == i) reps.push_back(i);
  const std::size_t r = reps.size();
  std::vector<std::vector<char>> contains(r, std::vector<char>(r, 0));
  std::vector<std::vector<char>> face(r, std::vector<char>(r, 0));
  std::vector<std::vector<char>> compat(r, std::vector<char>(r, 0));
  std::vector<std::vector<char>> samelin(r, std::vector<char>(r, 0));
  for (std::size_t a = 0; a < r; ++a) {
    const Cone& A = images_[reps[a]];
    for (std::size_t b = 0; b < r; ++b) {
      const Cone& B = images_[reps[b]];
      contains[a][b] = A.contains(B);
      samelin[a][b] = A.lineality_basis() == B.lineality_basis();
    }
  }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      if (contains[a][b]) face[a][b] = a == b || is_face_of(images_[reps[b]], images_[reps[a]]);
  for (std::size_t a = 0; a < r; ++a) {
    compat[a][a] = 1;
    for (std::size_t b = a + 1; b < r; ++b) {
      if (!samelin[a][b]) continue;
      bool ok;
      if (contains[a][b]) {
        ok = face[a][b];
      } else if (contains[b][a]) {
        ok = face[b][a];
      } else {
        const Cone meet = intersect(images_[reps[a]], images_[reps[b]]);
        ok = is_face_of(meet, images_[reps[a]]) && is_face_of(meet, images_[reps[b]]);
      }
      compat[a][b] = compat[b][a] = ok;
    }
  }

  std::vector<std::size_t> rep_pos(n);
  for (std::size_t a = 0; a < r; ++a) rep_pos[reps[a]] = a;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t a = rep_pos[image_class_[s]];
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t b = rep_pos[image_class_[t]];
      if (contains[a][b]) maps_into_[s].insert(t);
      if (face[a][b]) image_faces_[s].insert(t);
      if (compat[a][b]) compatible_[s].insert(t);
      if (samelin[a][b]) same_lineality_[s].insert(t);
    }
  }
}

std::optional<Obstruction> QuotientEngine::obstruction(const ConeSet& u) const {
  const Fan& f = fan();
  if (!is_face_closed(f, u)) throw std::invalid_argument("obstruction: selection is not face-closed");
  const auto maxc = maximal_members(f, u);
  for (auto s : maxc) {
    const ConeSet bad = (maps_into_[s] & u) - f.faces_of(s);
    if (!bad.empty()) {
      const std::size_t t = bad.members().front();
      return Obstruction{Obstruction::Kind::ChartNotAffine, s, t,
                         "cone " + f.describe_cone(t) + " maps into the image of chart " +
                             f.describe_cone(s) + " but is not a face of it"};
    }
  }
  for (std::size_t i = 0; i < maxc.size(); ++i)
    for (std::size_t j = i + 1; j < maxc.size(); ++j) {
      const auto a = maxc[i], b = maxc[j];
      if (!same_lineality_[a].contains(b))
        return Obstruction{Obstruction::Kind::MixedLineality, a, b,
                           "images of charts " + f.describe_cone(a) + " and " +
                               f.describe_cone(b) + " have different lineality spaces"};
      if (!compatible_[a].contains(b))
        return Obstruction{Obstruction::Kind::ImageNotFan, a, b,
                           "images of charts " + f.describe_cone(a) + " and " +
                               f.describe_cone(b) + " do not meet in a common face"};
    }
  return std::nullopt;
}

QuotientOutcome QuotientEngine::good_quotient(const ConeSet& u) const {
  if (auto ob = obstruction(u)) return *ob;
  return build_quotient_fan(*this, u);
}

ConeSet QuotientEngine::quotient_classes(const ConeSet& u) const {
  if (auto ob = obstruction(u)) throw NoGoodQuotient("no good quotient: " + ob->message);
  ConeSet out;
  for (auto s : maximal_members(fan(), u))
    (fan().faces_of(s) & image_faces_[s]).for_each([&](std::size_t t) { out.insert(image_class_[t]); });
  return out;
}

std::vector<std::size_t> QuotientEngine::orbit_classes(const ConeSet& u) const {
  const ConeSet qc = quotient_classes(u);
  const auto classes = qc.members();
  std::vector<std::size_t> out(fan().num_cones(), kNoCone);
  u.for_each([&](std::size_t t) {
    std::size_t best = kNoCone;
    for (auto c : classes)
      if (maps_into_[c].contains(t) && (best == kNoCone || images_[c].dim() < images_[best].dim()))
        best = c;
    out[t] = best;
  });
  return out;
}

bool QuotientEngine::is_saturated(const ConeSet& u, const ConeSet& u_prime) const {
  if (!u.is_subset_of(u_prime)) throw std::invalid_argument("is_saturated: U is not contained in U'");
  const auto o = orbit_classes(u_prime);
  ConeSet hit;
  u.for_each([&](std::size_t t) { hit.insert(o[t]); });
  bool ok = true;
  u_prime.for_each([&](std::size_t t) {
    if (hit.contains(o[t]) && !u.contains(t)) ok = false;
  });
  return ok;
}

ConeSet QuotientEngine::max_saturated_inside(const ConeSet& x_prime, const ConeSet& w) const {
  const auto o = orbit_classes(x_prime);
  const ConeSet b = x_prime - w;
  ConeSet hit;
  b.for_each([&](std::size_t t) { hit.insert(o[t]); });
  ConeSet out;
  x_prime.for_each([&](std::size_t t) {
    if (!hit.contains(o[t])) out.insert(t);
  });
  return out;
}

QuotientOutcome good_quotient(const SubfanSelection& u, const SubtorusAction& action) {
  if (u.fan_ptr() != action.fan && !(u.fan().rays() == action.fan->rays() &&
                                     u.fan().listed_max_cones() == action.fan->listed_max_cones()))
    throw std::invalid_argument("good_quotient: selection and action refer to different fans");
  return QuotientEngine(action).good_quotient(u.cones());
}

bool is_saturated(const SubfanSelection& u, const SubfanSelection& u_prime,
                  const SubtorusAction& action) {
  return QuotientEngine(action).is_saturated(u.cones(), u_prime.cones());
}

SubfanSelection max_saturated_inside(const SubfanSelection& x_prime, const SubfanSelection& w,
                                     const SubtorusAction& action) {
  if (!w.cones().is_subset_of(x_prime.cones()))
    throw std::invalid_argument("max_saturated_inside: W is not contained in X'");
  return SubfanSelection(x_prime.fan_ptr(),
                         QuotientEngine(action).max_saturated_inside(x_prime.cones(), w.cones()));
}

std::vector<ConeSet> enumerate_good_subsets(const QuotientEngine& engine, std::size_t max_subsets) {
  std::vector<ConeSet> out;
  for (const auto& s : enumerate_open_subsets(engine.fan(), max_subsets))
    if (engine.admits_good_quotient(s)) out.push_back(s);
  return out;
}

bool quotient_has_ak_property(const QuotientEngine& engine, const ConeSet& u, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("A_k property: k must be 1 or 2");
  if (!engine.admits_good_quotient(u)) throw NoGoodQuotient("A_k property: no good quotient");
  // The quotient is the toric variety of a fan, and A_2 for such a variety is
  // its embedding into a toric variety (itself). A_2 implies A_1.
  return true;
}

std::vector<ConeSet> t_maximal_subsets(const QuotientEngine& engine, int k, std::size_t max_subsets) {
  if (k != 1 && k != 2) throw std::invalid_argument("t_maximal_subsets: k must be 1 or 2");
  const auto goods = enumerate_good_subsets(engine, max_subsets);
  const std::size_t n = engine.fan().num_cones();

  // fibre[g][t]: cones of goods[g] in the same quotient fibre as t.
  std::vector<std::vector<ConeSet>> fibre(goods.size());
  std::vector<char> ak(goods.size());
  for (std::size_t g = 0; g < goods.size(); ++g) {
    const auto o = engine.orbit_classes(goods[g]);
    std::map<std::size_t, ConeSet> by_class;
    goods[g].for_each([&](std::size_t t) { by_class[o[t]].insert(t); });
    fibre[g].assign(n, ConeSet{});
    goods[g].for_each([&](std::size_t t) { fibre[g][t] = by_class[o[t]]; });
    ak[g] = quotient_has_ak_property(engine, goods[g], k);
  }

  std::vector<ConeSet> out;
  for (std::size_t a = 0; a < goods.size(); ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < goods.size() && maximal; ++b) {
      if (a == b || !ak[b] || !goods[a].is_subset_of(goods[b]) || goods[a] == goods[b]) continue;
      bool saturated = true;
      goods[a].for_each([&](std::size_t t) {
        if (!fibre[b][t].is_subset_of(goods[a])) saturated = false;
      });
      if (saturated) maximal = false;
    }
    if (maximal) out.push_back(goods[a]);
  }
  return out;
}

QuotientFan build_quotient_fan(const QuotientEngine& engine, const ConeSet& u) {
  if (auto ob = engine.obstruction(u)) throw NoGoodQuotient("no good quotient: " + ob->message);
  const Fan& f = engine.fan();
  const auto& act = engine.action();
  const std::size_t dbar = act.projection.rows();

  QuotientFan q;
  q.source = u;
  q.orbit_map.assign(f.num_cones(), kNoCone);
  const auto maxc = maximal_members(f, u);
  if (maxc.empty()) {
    q.target_rank = dbar;
    q.projection = act.projection;
    q.fan = std::make_shared<Fan>(dbar, std::vector<IntVector>{}, std::vector<RaySet>{});
    q.geometric = true;
    return q;
  }

  const Sublattice lin(dbar, engine.image(maxc.front()).lineality_basis());
  const IntMatrix split = quotient_lattice_map(lin);
  q.projection = split * act.projection;
  q.target_rank = q.projection.rows();

  std::vector<Cone> chart_images;
  std::vector<IntVector> rays;
  for (auto s : maxc) {
    chart_images.push_back(image_cone(engine.image(s), split));
    for (const auto& r : chart_images.back().rays()) rays.push_back(r);
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  std::vector<RaySet> cones;
  for (const auto& c : chart_images) {
    RaySet rs;
    for (const auto& r : c.rays())
      rs.push_back(static_cast<std::size_t>(std::lower_bound(rays.begin(), rays.end(), r) - rays.begin()));
    std::sort(rs.begin(), rs.end());
    cones.push_back(rs);
  }
  q.fan = std::make_shared<Fan>(q.target_rank, rays, cones);

  for (std::size_t k = 0; k < maxc.size(); ++k) {
    const auto idx = q.fan->index_of(cones[k]);
    if (!idx) throw std::logic_error("build_quotient_fan: chart image missing from quotient fan");
    q.charts.emplace_back(*idx, maxc[k]);
  }
  std::sort(q.charts.begin(), q.charts.end());

  u.for_each([&](std::size_t t) {
    const IntVector v = q.projection.apply(f.cone(t).relative_interior_point());
    const auto c = limit_of_generic_point(*q.fan, v);
    if (!c) throw std::logic_error("build_quotient_fan: image point outside the quotient fan");
    q.orbit_map[t] = *c;
  });

  q.geometric = true;
  for (const auto& [bar, s] : q.charts) {
    ConeSet hit;
    f.faces_of(s).for_each([&](std::size_t t) { hit.insert(q.orbit_map[t]); });
    if (hit.size() != f.faces_of(s).size() || hit != q.fan->faces_of(bar)) q.geometric = false;
  }
  return q;
}

std::vector<std::string> quotient_invariant_violations(const QuotientEngine& engine,
                                                       const QuotientFan& q) {
  std::vector<std::string> out;
  const Fan& f = engine.fan();
  const auto rep = validate_fan(*q.fan);
  if (!rep.valid) out.push_back("quotient fan invalid: " + rep.issues.front());
  for (const auto& l : engine.action().cochar.basis())
    if (!is_zero(q.projection.apply(l))) out.push_back("projection does not kill the acting lattice");

  std::optional<std::vector<IntVector>> lin;
  for (const auto& [bar, s] : q.charts) {
    ConeSet into;
    q.source.for_each([&](std::size_t t) {
      if (engine.image(s).contains(engine.image(t))) into.insert(t);
    });
    if (into != f.faces_of(s))
      out.push_back("cones mapping into the image of chart " + f.describe_cone(s) +
                    " are not its faces");
    if (image_cone(f.cone(s), q.projection) != q.fan->cone(bar))
      out.push_back("image of chart " + f.describe_cone(s) + " differs from its quotient cone");
    if (!lin) lin = engine.image(s).lineality_basis();
    else if (*lin != engine.image(s).lineality_basis())
      out.push_back("chart images have different lineality spaces");
  }
  q.source.for_each([&](std::size_t t) {
    const auto c = q.orbit_map[t];
    if (c == kNoCone ||
        !q.fan->cone(c).in_relative_interior(q.projection.apply(f.cone(t).relative_interior_point())))
      out.push_back("orbit map wrong at cone " + f.describe_cone(t));
  });
  return out;
}

namespace {

struct FanMatch {
  bool ok = false;
  std::string note;
};

// Compares two quotient fans of the same selection whose projections differ
// by a lattice isomorphism phi (phi * pa = pb).
FanMatch match_quotients(const QuotientFan& a, const std::vector<std::size_t>& a_charts_in_source,
                         const IntMatrix& pa, const QuotientFan& b) {
  FanMatch m;
  if (pa.rows() != b.projection.rows()) {
    m.note = "target ranks differ";
    return m;
  }
  if (!(kernel_lattice(pa) == kernel_lattice(b.projection))) {
    m.note = "projections have different kernels";
    return m;
  }
  const std::size_t r = pa.rows();
  const IntMatrix phi = r == 0 ? IntMatrix(0, 0) : b.projection * right_inverse(pa);
  if (!(phi * pa == b.projection)) {
    m.note = "no lattice isomorphism between the targets";
    return m;
  }
  const auto& ra = a.fan->rays();
  const auto& rb = b.fan->rays();
  if (ra.size() != rb.size()) {
    m.note = "different numbers of rays";
    return m;
  }
  std::vector<std::size_t> ray_map(ra.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const auto img = phi.apply(ra[i]);
    const auto it = std::find(rb.begin(), rb.end(), img);
    if (it == rb.end()) {
      m.note = "ray " + to_string(ra[i]) + " has no counterpart";
      return m;
    }
    ray_map[i] = static_cast<std::size_t>(it - rb.begin());
  }
  if (a.charts.size() != b.charts.size()) {
    m.note = "different numbers of maximal cones";
    return m;
  }
  for (std::size_t k = 0; k < a.charts.size(); ++k) {
    RaySet rs;
    for (auto i : a.fan->cone_rays(a.charts[k].first)) rs.push_back(ray_map[i]);
    std::sort(rs.begin(), rs.end());
    const auto idx = b.fan->index_of(rs);
    if (!idx) {
      m.note = "maximal cone has no counterpart";
      return m;
    }
    const auto it = std::find_if(b.charts.begin(), b.charts.end(),
                                 [&](const auto& p) { return p.first == *idx; });
    if (it == b.charts.end()) {
      m.note = "maximal cone is not maximal on the other side";
      return m;
    }
    if (it->second != a_charts_in_source[k]) {
      m.note = "chart cones differ";
      return m;
    }
  }
  m.ok = true;
  return m;
}

}  // namespace

StagedQuotientReport staged_quotient(const SubfanSelection& u, const SubtorusAction& first,
                                     const SubtorusAction& second) {
  return staged_quotient(QuotientEngine(first), QuotientEngine(second), u.cones());
}

StagedQuotientReport staged_quotient(const QuotientEngine& e1, const QuotientEngine& e2, const ConeSet& u) {
  StagedQuotientReport rep;
  const SubtorusAction& second = e2.action();
  rep.nested = true;
  for (const auto& l : e1.action().cochar.basis())
    if (!second.cochar.contains(l)) rep.nested = false;
  if (!rep.nested) {
    rep.notes.push_back("first acting lattice is not contained in the second");
    return rep;
  }

  rep.direct_exists = e2.admits_good_quotient(u);
  if (!e1.admits_good_quotient(u)) {
    rep.notes.push_back("selection has no good quotient by the first subtorus");
    return rep;
  }
  rep.first_stage_exists = true;
  const QuotientFan q1 = build_quotient_fan(e1, u);

  std::vector<IntVector> residual;
  for (const auto& l : second.cochar.basis()) residual.push_back(q1.projection.apply(l));
  const SubtorusAction act12 = normalize_action(q1.fan, residual);
  rep.residual_input_saturated = act12.input_saturated;
  if (!act12.input_saturated) rep.notes.push_back("residual acting lattice was saturated");
  const QuotientEngine e12(act12);
  // Stage 2 acts on the image of U, which is all of the stage-1 fan unless U is empty.
  const ConeSet whole = u.empty() ? ConeSet{} : q1.fan->all_cones();
  rep.staged_exists = e12.admits_good_quotient(whole);

  if (rep.staged_exists != rep.direct_exists) {
    rep.notes.push_back(rep.staged_exists ? "staged quotient exists but direct does not"
                                          : "direct quotient exists but staged does not");
    return rep;
  }
  if (!rep.staged_exists) {
    rep.consistent = true;
    rep.notes.push_back("both routes have no good quotient");
    return rep;
  }

  const QuotientFan q12 = build_quotient_fan(e12, whole);
  const QuotientFan q2 = build_quotient_fan(e2, u);
  std::vector<std::size_t> source_charts;
  for (const auto& [bar, s1] : q12.charts) {
    const auto it = std::find_if(q1.charts.begin(), q1.charts.end(),
                                 [&](const auto& p) { return p.first == s1; });
    source_charts.push_back(it == q1.charts.end() ? kNoCone : it->second);
  }
  const auto m = match_quotients(q12, source_charts, q12.projection * q1.projection, q2);
  rep.fans_agree = m.ok;
  rep.consistent = m.ok;
  if (!m.ok) rep.notes.push_back("staged and direct quotient fans differ: " + m.note);
  return rep;
}

QuotientPropertyReport check_quotient_properties(const QuotientEngine& engine, const ConeSet& u) {
  QuotientPropertyReport rep;
  const Fan& f = engine.fan();
  const auto o = engine.orbit_classes(u);
  const auto qc = engine.quotient_classes(u).members();
  const auto cones = u.members();

  auto image_of = [&](const ConeSet& s) {
    ConeSet out;
    s.for_each([&](std::size_t t) { out.insert(o[t]); });
    return out;
  };
  auto closed_in_quotient = [&](const ConeSet& s) {
    bool ok = true;
    s.for_each([&](std::size_t c) {
      for (auto c2 : qc)
        if (engine.class_is_face(c, c2) && !s.contains(c2)) ok = false;
    });
    return ok;
  };

  std::vector<ConeSet> closures;
  std::vector<ConeSet> closure_images;
  for (auto t : cones) {
    closures.push_back(f.star_of(t) & u);
    closure_images.push_back(image_of(closures.back()));
  }

  for (std::size_t i = 0; i < cones.size(); ++i) {
    ++rep.closed_images_checked;
    if (!closed_in_quotient(closure_images[i]))
      rep.violations.push_back("(i) image of the orbit closure of " + f.describe_cone(cones[i]) +
                               " is not closed");
  }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      if (closures[i].intersects(closures[j])) continue;
      ++rep.disjointness_checked;
      if (closure_images[i].intersects(closure_images[j]))
        rep.violations.push_back("(ii) disjoint orbit closures of " + f.describe_cone(cones[i]) +
                                 " and " + f.describe_cone(cones[j]) + " have meeting images");
    }

  // Open subsets of the quotient: sets of quotient cones closed under faces.
  std::vector<std::size_t> order = qc;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return engine.image(a).dim() < engine.image(b).dim();
  });
  std::vector<ConeSet> opens;
  ConeSet current;
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      opens.push_back(current);
      return;
    }
    self(self, k + 1);
    const std::size_t c = order[k];
    for (auto c2 : qc)
      if (c2 != c && engine.class_is_face(c2, c) && !current.contains(c2)) return;
    current.insert(c);
    self(self, k + 1);
    current.erase(c);
  };
  recurse(recurse, 0);

  for (const auto& v : opens) {
    ConeSet u0;
    for (auto t : cones)
      if (v.contains(o[t])) u0.insert(t);
    ++rep.saturated_opens_checked;
    if (!is_face_closed(f, u0)) {
      rep.violations.push_back("(iii) preimage of an open set of the quotient is not open");
      continue;
    }
    if (!engine.is_saturated(u0, u)) rep.violations.push_back("(iii) preimage is not saturated");
    if (!engine.admits_good_quotient(u0)) {
      rep.violations.push_back("(iii) saturated open subset has no good quotient");
      continue;
    }
    if (engine.quotient_classes(u0) != v)
      rep.violations.push_back("(iii) saturated open subset does not map onto its image");
    for (std::size_t i = 0; i < cones.size(); ++i) {
      ++rep.restriction_checked;
      const ConeSet& a = closures[i];
      const ConeSet hit = image_of(a & u0);
      a.for_each([&](std::size_t t) {
        if (hit.contains(o[t]) && !u0.contains(t))
          rep.violations.push_back("(iv) intersection with the orbit closure of " +
                                   f.describe_cone(cones[i]) + " is not saturated in it");
      });
    }
  }
  return rep;
}

std::string describe(const Obstruction& o, const Fan& f) {
  std::ostringstream os;
  switch (o.kind) {
    case Obstruction::Kind::ChartNotAffine: os << "chart not affine"; break;
    case Obstruction::Kind::ImageNotFan: os << "images do not form a fan"; break;
    case Obstruction::Kind::MixedLineality: os << "mixed lineality"; break;
  }
  os << ": " << f.describe_cone(o.first) << ", " << f.describe_cone(o.second) << " (" << o.message << ")";
  return os.str();
}

}  // namespace toricq
