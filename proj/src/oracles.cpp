#include "toricq/oracles.hpp"

#include "toricq/cone.hpp"

#include <algorithm>
#include <set>

namespace toricq {

namespace {

bool rays_subset(const RaySet& a, const RaySet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

InvariantOracle::InvariantOracle(const Fan& fan, const Sublattice& cochar, long bound)
    : fan_(fan), cochar_(cochar), bound_(bound) {
  if (bound < 1) throw std::invalid_argument("InvariantOracle: bound must be positive");
  const std::size_t d = fan.dim();
  if (cochar.ambient_rank() != d) throw DimensionError("InvariantOracle: lattice of wrong rank");

  IntVector m(d, Integer(-bound));
  while (true) {
    bool invariant = true;
    for (const auto& l : cochar_.basis())
      if (dot(m, l) != 0) invariant = false;
    if (invariant) box_.push_back(m);
    std::size_t k = 0;
    while (k < d && m[k] == bound) m[k++] = -bound;
    if (k == d) break;
    ++m[k];
  }

  invariants_.resize(fan.num_cones());
  for (std::size_t s = 0; s < fan.num_cones(); ++s)
    for (std::size_t k = 0; k < box_.size(); ++k) {
      bool regular = true;
      for (auto r : fan.cone_rays(s))
        if (dot(box_[k], fan.rays()[r]) < 0) regular = false;
      if (regular) invariants_[s].push_back(k);
    }

  face_table_.assign(fan.num_cones(), std::vector<std::size_t>(fan.num_cones(), kNone));
  for (std::size_t s = 0; s < fan.num_cones(); ++s)
    for (std::size_t t = 0; t < fan.num_cones(); ++t)
      if (rays_subset(fan.cone_rays(t), fan.cone_rays(s))) face_table_[s][t] = compute_invariant_face(s, t);
}

bool InvariantOracle::maps_into(std::size_t t, std::size_t s) const {
  for (auto k : invariants_[s])
    for (auto r : fan_.cone_rays(t))
      if (dot(box_[k], fan_.rays()[r]) < 0) return false;
  return true;
}

bool InvariantOracle::admits_good_quotient(const ConeSet& u) const {
  const auto maxc = maximal_members(fan_, u);
  for (auto s : maxc) {
    bool ok = true;
    u.for_each([&](std::size_t t) {
      if (maps_into(t, s) != rays_subset(fan_.cone_rays(t), fan_.cone_rays(s))) ok = false;
    });
    if (!ok) return false;
  }
  for (std::size_t i = 0; i < maxc.size(); ++i)
    for (std::size_t j = i + 1; j < maxc.size(); ++j) {
      const RaySet& a = fan_.cone_rays(maxc[i]);
      const RaySet& b = fan_.cone_rays(maxc[j]);
      RaySet common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      // Rays of a (resp. b) on which every separating invariant vanishes.
      std::set<std::size_t> zero_a(a.begin(), a.end()), zero_b(b.begin(), b.end());
      for (auto k : invariants_[maxc[i]]) {
        bool separates = true;
        for (auto r : b)
          if (dot(box_[k], fan_.rays()[r]) > 0) separates = false;
        if (!separates) continue;
        for (auto r : a)
          if (dot(box_[k], fan_.rays()[r]) != 0) zero_a.erase(r);
        for (auto r : b)
          if (dot(box_[k], fan_.rays()[r]) != 0) zero_b.erase(r);
      }
      const std::set<std::size_t> want(common.begin(), common.end());
      if (zero_a != want || zero_b != want) return false;
    }
  return true;
}

std::size_t InvariantOracle::invariant_face(std::size_t s, std::size_t t) const {
  if (face_table_[s][t] != kNone) return face_table_[s][t];
  return compute_invariant_face(s, t);
}

std::size_t InvariantOracle::compute_invariant_face(std::size_t s, std::size_t t) const {
  const RaySet& rs = fan_.cone_rays(s);
  std::set<std::size_t> zero(rs.begin(), rs.end());
  for (auto k : invariants_[s]) {
    bool vanishes = true;
    for (auto r : fan_.cone_rays(t))
      if (dot(box_[k], fan_.rays()[r]) != 0) vanishes = false;
    if (!vanishes) continue;
    for (auto r : rs)
      if (dot(box_[k], fan_.rays()[r]) != 0) zero.erase(r);
  }
  const auto idx = fan_.index_of(RaySet(zero.begin(), zero.end()));
  if (!idx) throw std::logic_error("invariant_face: not a cone of the fan");
  return *idx;
}

bool InvariantOracle::is_saturated(const ConeSet& u, const ConeSet& u_prime) const {
  if (!u.is_subset_of(u_prime)) throw std::invalid_argument("is_saturated: U is not contained in U'");
  if (!admits_good_quotient(u_prime))
    throw std::invalid_argument("is_saturated: U' has no good quotient");
  return saturated_in_good(u, maximal_members(fan_, u_prime));
}

bool InvariantOracle::saturated_in_good(const ConeSet& u, const std::vector<std::size_t>& charts) const {
  for (auto s : charts) {
    bool ok = true;
    u.for_each([&](std::size_t t) {
      if (rays_subset(fan_.cone_rays(t), fan_.cone_rays(s)) && !u.contains(invariant_face(s, t)))
        ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

InvariantOracle::ChartRingCheck InvariantOracle::chart_ring_identity(std::size_t s) const {
  ChartRingCheck out;
  const std::size_t d = fan_.dim();
  const IntMatrix p = quotient_lattice_map(cochar_);
  const std::size_t dbar = p.rows();
  const IntMatrix pt = p.transpose();

  std::vector<IntVector> image_rays;
  for (auto r : fan_.cone_rays(s)) image_rays.push_back(p.apply(fan_.rays()[r]));

  // Upstairs: invariant box characters regular on s. Downstairs: characters
  // of N/L regular on pi(s), pulled back.
  std::set<IntVector> up, down;
  for (auto k : invariants_[s]) up.insert(box_[k]);
  if (dbar == 0) {
    down.insert(IntVector(d, Integer(0)));
  } else {
    const IntMatrix sec = right_inverse(p).transpose();  // M -> M/L-dual coordinates
    for (const auto& m : box_) {
      const IntVector mbar = sec.apply(m);
      if (pt.apply(mbar) != m) continue;
      bool regular = true;
      for (const auto& v : image_rays)
        if (dot(mbar, v) < 0) regular = false;
      if (regular) down.insert(m);
    }
  }
  out.box_points_agree = up == down;

  std::vector<IntVector> ineqs;
  for (auto r : fan_.cone_rays(s)) ineqs.push_back(fan_.rays()[r]);
  for (const auto& l : cochar_.basis()) {
    ineqs.push_back(l);
    ineqs.push_back(negated(l));
  }
  const Cone invariant_cone = Cone::from_inequalities(d, ineqs);
  const Cone image_dual = dual_cone(Cone::from_generators(dbar, image_rays));
  if (invariant_cone.is_pointed() && image_dual.is_pointed()) {
    out.hilbert_bases_compared = true;
    const auto hb_up = hilbert_basis(invariant_cone, 4 * bound_);
    const auto hb_down = hilbert_basis(image_dual, 4 * bound_);
    if (hb_up.complete() && hb_down.complete()) {
      std::set<IntVector> pulled;
      for (const auto& m : hb_down.elements) pulled.insert(pt.apply(m));
      out.hilbert_bases_agree = pulled == std::set<IntVector>(hb_up.elements.begin(), hb_up.elements.end());
    }
  }
  return out;
}

std::vector<ConeSet> saturated_subsets(const InvariantOracle& oracle, const Fan& f,
                                       const ConeSet& u_prime) {
  return saturated_subsets(oracle, f, u_prime, enumerate_open_subsets(f));
}

std::vector<ConeSet> saturated_subsets(const InvariantOracle& oracle, const Fan& f, const ConeSet& u_prime,
                                       const std::vector<ConeSet>& opens) {
  if (!oracle.admits_good_quotient(u_prime))
    throw std::invalid_argument("saturated_subsets: U' has no good quotient");
  const auto charts = maximal_members(f, u_prime);
  std::vector<ConeSet> out;
  for (const auto& s : opens)
    if (s.is_subset_of(u_prime) && oracle.saturated_in_good(s, charts)) out.push_back(s);
  return out;
}

std::vector<ConeSet> brute_force_t_maximal(const InvariantOracle& oracle, const Fan& f) {
  std::vector<ConeSet> goods;
  for (const auto& s : enumerate_open_subsets(f))
    if (oracle.admits_good_quotient(s)) goods.push_back(s);
  std::vector<ConeSet> out;
  for (const auto& u : goods) {
    bool maximal = true;
    for (const auto& v : goods)
      if (u != v && u.is_subset_of(v) && oracle.is_saturated(u, v)) maximal = false;
    if (maximal) out.push_back(u);
  }
  return out;
}

ConeSet brute_force_max_saturated(const InvariantOracle& oracle, const Fan& f,
                                  const ConeSet& x_prime, const ConeSet& w) {
  return brute_force_max_saturated(saturated_subsets(oracle, f, x_prime), w);
}

ConeSet brute_force_max_saturated(const std::vector<ConeSet>& sats, const ConeSet& w) {
  ConeSet best;
  for (const auto& s : sats)
    if (s.is_subset_of(w)) best |= s;
  if (std::find(sats.begin(), sats.end(), best) == sats.end())
    throw std::logic_error("brute_force_max_saturated: no unique maximal saturated subset");
  return best;
}

}  // namespace toricq
