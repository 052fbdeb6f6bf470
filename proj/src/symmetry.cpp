#include "toricq/symmetry.hpp"

#include <algorithm>
#include <map>

namespace toricq {

SymmetryGroup SymmetryGroup::trivial(std::shared_ptr<const Fan> fan) {
  if (!fan) throw std::invalid_argument("SymmetryGroup: null fan");
  auto id = as_fan_automorphism(*fan, IntMatrix::identity(fan->dim()));
  return SymmetryGroup(std::move(fan), {*id});
}

SymmetryGroup SymmetryGroup::generated_by(std::shared_ptr<const Fan> fan,
                                          const std::vector<IntMatrix>& generators) {
  SymmetryGroup g = trivial(fan);
  std::vector<FanAutomorphism> gens;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    auto a = as_fan_automorphism(*fan, generators[i]);
    if (!a) throw std::invalid_argument("symmetry " + std::to_string(i) + " does not preserve the fan");
    gens.push_back(*a);
  }
  auto& els = g.elements_;
  for (std::size_t k = 0; k < els.size(); ++k)
    for (const auto& s : gens) {
      auto c = compose(*fan, s, els[k]);
      if (std::find(els.begin(), els.end(), c) == els.end()) els.push_back(std::move(c));
    }
  return g;
}

SymmetryGroup SymmetryGroup::from_elements(std::shared_ptr<const Fan> fan, std::vector<FanAutomorphism> elements) {
  std::vector<IntMatrix> mats;
  for (const auto& e : elements) mats.push_back(e.matrix);
  SymmetryGroup g = generated_by(std::move(fan), mats);
  if (g.order() != elements.size() && !(elements.empty() && g.order() == 1))
    throw std::invalid_argument("SymmetryGroup: elements are not closed under composition");
  return g;
}

bool preserves_lattice(const FanAutomorphism& g, const Sublattice& l) {
  for (const auto& v : l.basis())
    if (!l.contains(g.matrix.apply(v))) return false;
  return true;
}

GroupActionData::GroupActionData(SubtorusAction act, SymmetryGroup sym)
    : sym_(std::move(sym)), engine_(std::move(act)) {
  const Fan& a = *engine_.action().fan;
  const Fan& b = sym_.fan();
  if (&a != &b && !(a.rays() == b.rays() && a.listed_max_cones() == b.listed_max_cones()))
    throw std::invalid_argument("GroupActionData: subtorus and symmetries refer to different fans");
  for (std::size_t i = 0; i < sym_.order(); ++i)
    if (!preserves_lattice(sym_.elements()[i], engine_.action().cochar))
      throw std::invalid_argument("GroupActionData: symmetry " + std::to_string(i) +
                                  " does not map the subtorus lattice into itself");
}

ConeSet translate(const FanAutomorphism& g, const ConeSet& u) {
  ConeSet out;
  u.for_each([&](std::size_t c) { out.insert(g.cone_permutation[c]); });
  return out;
}

SubfanSelection translate(const IntMatrix& g, const SubfanSelection& u) {
  const auto a = as_fan_automorphism(u.fan(), g);
  if (!a) throw std::invalid_argument("translate: matrix does not preserve the fan");
  return SubfanSelection(u.fan_ptr(), translate(*a, u.cones()));
}

ConeSet w_set(const SymmetryGroup& sym, const ConeSet& u) {
  ConeSet out = u;
  for (const auto& g : sym.elements()) out &= translate(g, u);
  return out;
}

SubfanSelection w_set(const SubfanSelection& u, const GroupActionData& g) {
  return SubfanSelection(u.fan_ptr(), w_set(g.sym(), u.cones()));
}

bool is_invariant(const SymmetryGroup& sym, const ConeSet& u) {
  for (const auto& g : sym.elements())
    if (translate(g, u) != u) return false;
  return true;
}

CompositeFibres::CompositeFibres(const GroupActionData& g, const ConeSet& w) : w_(w) {
  if (!is_invariant(g.sym(), w)) throw std::invalid_argument("CompositeFibres: selection is not invariant");
  const auto o = g.engine().orbit_classes(w);
  key_.assign(g.fan().num_cones(), kNoCone);
  std::map<std::size_t, std::size_t> class_key;
  w.for_each([&](std::size_t t) {
    std::size_t k = o[t];
    for (const auto& e : g.sym().elements()) k = std::min(k, o[e.cone_permutation[t]]);
    key_[t] = k;
    class_key[o[t]] = k;
  });
  std::map<std::size_t, std::vector<std::size_t>> by_key;
  g.engine().quotient_classes(w).for_each([&](std::size_t c) { by_key[class_key.at(c)].push_back(c); });
  for (auto& [k, cs] : by_key) orbits_.push_back(std::move(cs));
}

ConeSet CompositeFibres::keys(const ConeSet& v) const {
  ConeSet out;
  v.for_each([&](std::size_t t) {
    if (!w_.contains(t)) throw std::invalid_argument("CompositeFibres: cone outside the domain");
    out.insert(key_[t]);
  });
  return out;
}

ConeSet CompositeFibres::saturation(const ConeSet& v) const {
  const ConeSet hit = keys(v);
  ConeSet out;
  w_.for_each([&](std::size_t t) {
    if (hit.contains(key_[t])) out.insert(t);
  });
  return out;
}

TheoremReport verify_theorem_conclusions(const GroupActionData& g, const ConeSet& u,
                                         const std::vector<ConeSet>& t_maximal) {
  TheoremReport rep;
  rep.u = u;
  rep.connected = g.sym().is_trivial();
  if (std::find(t_maximal.begin(), t_maximal.end(), u) == t_maximal.end()) {
    rep.refused = true;
    if (!is_face_closed(g.fan(), u))
      rep.diagnosis = "selection is not face-closed";
    else if (auto ob = g.engine().obstruction(u))
      rep.diagnosis = "selection has no good quotient: " + describe(*ob, g.fan());
    else
      rep.diagnosis = "selection is a proper saturated subset of a larger good selection";
    return rep;
  }
  const auto& engine = g.engine();
  rep.w = w_set(g.sym(), u);
  rep.open = is_face_closed(g.fan(), rep.w);
  rep.obstruction = engine.obstruction(rep.w);
  rep.good = !rep.obstruction.has_value();
  rep.saturated = rep.w.is_subset_of(u) && engine.is_saturated(rep.w, u);
  if (rep.good) {
    rep.quotient_cones = engine.quotient_classes(rep.w).size();
    rep.class_orbits = CompositeFibres(g, rep.w).class_orbits();
  }
  if (!rep.connected)
    rep.caveats.push_back("the acting group has " + std::to_string(g.sym().order()) +
                          " components; the connectedness hypothesis fails, so these verdicts are checks only");
  return rep;
}

TheoremReport verify_theorem_conclusions(const GroupActionData& g, const ConeSet& u, std::size_t max_subsets) {
  return verify_theorem_conclusions(g, u, t_maximal_subsets(g.engine(), 2, max_subsets));
}

bool CorollaryReport::ok() const {
  for (const auto& m : maximal)
    if (!m.ok) return false;
  for (const auto& v : invariant)
    if (!v.ok) return false;
  return true;
}

CorollaryReport verify_corollary(const GroupActionData& g, std::size_t max_subsets) {
  if (!is_complete(g.fan()) || !is_simplicial(g.fan()))
    throw std::invalid_argument("verify_corollary: fan must be complete and simplicial");
  CorollaryReport rep;
  const auto& engine = g.engine();
  const auto maxs = t_maximal_subsets(engine, 2, max_subsets);
  std::vector<std::optional<CompositeFibres>> fibres;
  for (const auto& u : maxs) {
    CorollaryReport::MaximalEntry e;
    e.theorem = verify_theorem_conclusions(g, u, maxs);
    e.ok = e.theorem.open && e.theorem.good;
    fibres.push_back(e.theorem.good ? std::optional<CompositeFibres>(CompositeFibres(g, e.theorem.w))
                                    : std::nullopt);
    rep.maximal.push_back(std::move(e));
  }
  for (const auto& v : enumerate_good_subsets(engine, max_subsets)) {
    if (!is_invariant(g.sym(), v)) continue;
    CorollaryReport::InvariantEntry e;
    e.v = v;
    for (std::size_t i = 0; i < maxs.size() && !e.host; ++i)
      if (fibres[i] && v.is_subset_of(fibres[i]->domain()) && fibres[i]->is_saturated(v)) e.host = i;
    e.ok = e.host.has_value();
    rep.invariant.push_back(std::move(e));
  }
  return rep;
}

Eq1Checker::Eq1Checker(const GroupActionData& g, const ConeSet& x_prime) : g_(g), x_prime_(x_prime) {
  const auto& engine = g.engine();
  good_ = engine.admits_good_quotient(x_prime);
  w_x_prime_ = w_set(g.sym(), x_prime);
  w_good_ = engine.admits_good_quotient(w_x_prime_);
  w_saturated_ = good_ && w_good_ && engine.is_saturated(w_x_prime_, x_prime);
  if (w_good_) fibres_.emplace(g, w_x_prime_);
}

Eq1Report Eq1Checker::check(const ConeSet& x) const {
  Eq1Report rep;
  rep.x_prime = x_prime_;
  rep.x = x;
  rep.b = x_prime_ - x;
  rep.x_prime_good = good_;
  rep.x_open_in_x_prime = x.is_subset_of(x_prime_) && is_face_closed(g_.fan(), x);
  rep.x_invariant = is_invariant(g_.sym(), x);
  rep.w_x_prime_good = w_good_;
  rep.w_x_prime_saturated = w_saturated_;
  const ConeSet w_b = w_set(g_.sym(), rep.b);
  rep.w_b_identity = (w_x_prime_ & rep.b) == w_b;
  if (!rep.x_prime_good) rep.notes.push_back("X' has no good quotient");
  if (!rep.x_open_in_x_prime) rep.notes.push_back("X is not an open subset of X'");
  if (!rep.x_invariant) rep.notes.push_back("X is not invariant under the symmetries");
  if (!rep.w_x_prime_good) rep.notes.push_back("W(X') has no good quotient");
  else if (!rep.w_x_prime_saturated) rep.notes.push_back("W(X') is not saturated in X'");
  if (!rep.hypotheses_hold()) return rep;

  rep.u = g_.engine().max_saturated_inside(x_prime_, x);
  rep.left = w_set(g_.sym(), rep.u);
  rep.right = w_x_prime_ - fibres_->saturation(w_b);
  rep.equal = rep.left == rep.right;
  if (!rep.equal) {
    const ConeSet diff = (rep.left - rep.right) | (rep.right - rep.left);
    rep.witness = diff.members().front();
  }
  if (!rep.w_b_identity) rep.notes.push_back("W(X') ∩ B differs from W(B)");
  return rep;
}

Eq1Report eq1_crosscheck(const GroupActionData& g, const ConeSet& x_prime, const ConeSet& x) {
  return Eq1Checker(g, x_prime).check(x);
}

}  // namespace toricq
