#include "toricq/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace toricq {

namespace {

bool ray_set_less(const RaySet& a, const RaySet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool is_subset(const RaySet& a, const RaySet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<IntVector> ray_vectors(const Fan& f, const RaySet& s) {
  std::vector<IntVector> out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(f.rays()[i]);
  return out;
}

}  // namespace

// ---- Fan --------------------------------------------------------------------

Fan::Fan(std::size_t dim, std::vector<IntVector> rays, std::vector<RaySet> max_cones)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != dim_)
      throw DimensionError("Fan: ray " + std::to_string(i) + " has length " +
                           std::to_string(rays_[i].size()) + ", lattice rank is " +
                           std::to_string(dim_));
    if (is_zero(rays_[i])) throw std::invalid_argument("Fan: ray " + std::to_string(i) + " is zero");
  }
  for (auto& mc : max_cones_) {
    std::sort(mc.begin(), mc.end());
    mc.erase(std::unique(mc.begin(), mc.end()), mc.end());
    for (auto r : mc)
      if (r >= rays_.size())
        throw std::out_of_range("Fan: ray index " + std::to_string(r) + " out of range");
  }

  std::set<RaySet, decltype(&ray_set_less)> all(&ray_set_less);
  all.insert(RaySet{});
  for (const auto& mc : max_cones_) {
    Cone c = Cone::from_generators(dim_, ray_vectors(*this, mc));
    // Face ray sets are intersections of the facet-tight subsets.
    std::vector<RaySet> tight;
    for (const auto& facet : c.facet_normals()) {
      RaySet t;
      for (auto r : mc)
        if (dot(facet, rays_[r]) == 0) t.push_back(r);
      tight.push_back(std::move(t));
    }
    std::vector<RaySet> queue{mc};
    std::set<RaySet> seen{mc};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto& t : tight) {
        RaySet next;
        std::set_intersection(queue[h].begin(), queue[h].end(), t.begin(), t.end(),
                              std::back_inserter(next));
        if (seen.insert(next).second) queue.push_back(next);
      }
    all.insert(queue.begin(), queue.end());
  }
  if (all.size() > ConeSet::kCapacity)
    throw SizeGuardError("Fan: " + std::to_string(all.size()) + " cones exceed capacity " +
                         std::to_string(ConeSet::kCapacity));
  cones_.assign(all.begin(), all.end());
  cone_objects_.reserve(cones_.size());
  for (const auto& s : cones_) cone_objects_.push_back(Cone::from_generators(dim_, ray_vectors(*this, s)));

  faces_.resize(cones_.size());
  stars_.resize(cones_.size());
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = 0; j < cones_.size(); ++j)
      if (is_subset(cones_[j], cones_[i])) {
        faces_[i].insert(j);
        stars_[j].insert(i);
      }
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (stars_[i].size() == 1) maximal_.push_back(i);
}

std::optional<std::size_t> Fan::index_of(const RaySet& rays_in) const {
  RaySet rays = rays_in;
  std::sort(rays.begin(), rays.end());
  auto it = std::lower_bound(cones_.begin(), cones_.end(), rays, ray_set_less);
  if (it == cones_.end() || *it != rays) return std::nullopt;
  return static_cast<std::size_t>(it - cones_.begin());
}

ConeSet Fan::all_cones() const {
  ConeSet s;
  for (std::size_t i = 0; i < cones_.size(); ++i) s.insert(i);
  return s;
}

std::string Fan::describe_cone(std::size_t i) const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < cones_[i].size(); ++k) {
    if (k) os << ',';
    os << cones_[i][k];
  }
  os << '}';
  return os.str();
}

// ---- selections -------------------------------------------------------------

bool is_face_closed(const Fan& f, const ConeSet& s) {
  bool ok = true;
  s.for_each([&](std::size_t i) {
    if (!f.faces_of(i).is_subset_of(s)) ok = false;
  });
  return ok;
}

std::vector<std::size_t> maximal_members(const Fan& f, const ConeSet& s) {
  std::vector<std::size_t> out;
  s.for_each([&](std::size_t i) {
    if ((f.star_of(i) & s).size() == 1) out.push_back(i);
  });
  return out;
}

ConeSet face_closure(const Fan& f, const std::vector<std::size_t>& cones) {
  ConeSet s;
  for (auto c : cones) s |= f.faces_of(c);
  return s;
}

ConeSet star_closure(const Fan& f, const ConeSet& s) {
  ConeSet out;
  s.for_each([&](std::size_t i) { out |= f.star_of(i); });
  return out;
}

SubfanSelection::SubfanSelection(std::shared_ptr<const Fan> fan, ConeSet cones)
    : fan_(std::move(fan)), cones_(cones) {
  if (!fan_) throw std::invalid_argument("SubfanSelection: null fan");
  cones_.for_each([&](std::size_t i) {
    if (i >= fan_->num_cones()) throw std::out_of_range("SubfanSelection: cone index out of range");
  });
  if (!is_face_closed(*fan_, cones_))
    throw std::invalid_argument("SubfanSelection: selection is not closed under faces");
}

SubfanSelection SubfanSelection::whole(std::shared_ptr<const Fan> fan) {
  ConeSet all = fan->all_cones();
  return SubfanSelection(std::move(fan), all);
}

SubfanSelection SubfanSelection::empty(std::shared_ptr<const Fan> fan) {
  return SubfanSelection(std::move(fan), ConeSet{});
}

SubfanSelection SubfanSelection::generated_by(std::shared_ptr<const Fan> fan,
                                              const std::vector<std::size_t>& cones) {
  ConeSet s = face_closure(*fan, cones);
  return SubfanSelection(std::move(fan), s);
}

std::vector<std::size_t> SubfanSelection::maximal_cones() const {
  return maximal_members(*fan_, cones_);
}

// ---- validation and global properties --------------------------------------

FanReport validate_fan(const Fan& f) {
  FanReport rep;
  auto fail = [&](std::string msg) {
    rep.valid = false;
    rep.issues.push_back(std::move(msg));
  };

  const auto& rays = f.rays();
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (content(rays[i]) != 1) fail("ray " + std::to_string(i) + " " + to_string(rays[i]) + " is not primitive");
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j]) fail("rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }

  const auto& mcs = f.listed_max_cones();
  std::vector<Cone> cones;
  for (std::size_t k = 0; k < mcs.size(); ++k) {
    cones.push_back(Cone::from_generators(f.dim(), ray_vectors(f, mcs[k])));
    const Cone& c = cones.back();
    if (!c.is_pointed()) fail("maximal cone " + std::to_string(k) + " is not strongly convex");
    std::set<IntVector> extreme(c.rays().begin(), c.rays().end());
    for (auto r : mcs[k])
      if (!extreme.count(make_primitive(rays[r])))
        fail("ray " + std::to_string(r) + " is not an extreme ray of maximal cone " + std::to_string(k));
    if (c.is_pointed() && extreme.size() != mcs[k].size())
      fail("maximal cone " + std::to_string(k) + " has extreme rays that are not listed");
  }

  std::vector<bool> used(rays.size(), false);
  for (const auto& mc : mcs)
    for (auto r : mc) used[r] = true;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i]) fail("ray " + std::to_string(i) + " lies in no maximal cone");

  for (std::size_t a = 0; a < mcs.size(); ++a)
    for (std::size_t b = a + 1; b < mcs.size(); ++b) {
      if (cones[a].contains(cones[b]) || cones[b].contains(cones[a])) {
        fail("maximal cones " + std::to_string(a) + " and " + std::to_string(b) + " are nested");
        if (!rep.witness) rep.witness = {a, b};
        continue;
      }
      Cone meet = intersect(cones[a], cones[b]);
      RaySet common;
      std::set_intersection(mcs[a].begin(), mcs[a].end(), mcs[b].begin(), mcs[b].end(),
                            std::back_inserter(common));
      Cone expected = Cone::from_generators(f.dim(), ray_vectors(f, common));
      if (!(meet == expected) || !is_face_of(meet, cones[a]) || !is_face_of(meet, cones[b])) {
        fail("maximal cones " + std::to_string(a) + " and " + std::to_string(b) +
             " do not meet in a common face");
        if (!rep.witness) rep.witness = {a, b};
      }
    }
  return rep;
}

bool is_complete(const Fan& f) {
  const auto& maxi = f.maximal_cones();
  for (auto m : maxi)
    if (f.cone(m).dim() != f.dim()) return false;
  // Ridge pairing: every codimension-one face lies in exactly two maximal cones.
  std::map<std::size_t, std::vector<std::size_t>> ridge_owners;
  for (std::size_t k = 0; k < maxi.size(); ++k)
    f.faces_of(maxi[k]).for_each([&](std::size_t i) {
      if (f.cone(i).dim() + 1 == f.dim()) ridge_owners[i].push_back(k);
    });
  for (const auto& [ridge, owners] : ridge_owners)
    if (owners.size() != 2) return false;
  // Connected in codimension one.
  std::vector<std::size_t> parent(maxi.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [ridge, owners] : ridge_owners) parent[find(owners[0])] = find(owners[1]);
  for (std::size_t k = 0; k < maxi.size(); ++k)
    if (find(k) != find(0)) return false;
  return !maxi.empty();
}

bool is_simplicial(const Fan& f) {
  for (auto m : f.maximal_cones())
    if (!f.cone(m).is_simplicial()) return false;
  return true;
}

bool is_smooth(const Fan& f) {
  for (auto m : f.maximal_cones()) {
    const auto& rs = f.cone_rays(m);
    if (rs.empty()) continue;
    auto snf = smith_normal_form(IntMatrix::from_rows(f.dim(), ray_vectors(f, rs)));
    for (const auto& x : snf.diag)
      if (x != 1) return false;
  }
  return true;
}

std::vector<ConeSet> enumerate_open_subsets(const Fan& f, std::size_t max_subsets) {
  std::vector<ConeSet> out;
  const std::size_t n = f.num_cones();
  ConeSet current;
  // Cones are ordered so that faces come before the cones containing them.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (out.size() >= max_subsets)
        throw SizeGuardError("enumerate_open_subsets: more than " + std::to_string(max_subsets) +
                             " open subsets");
      out.push_back(current);
      return;
    }
    rec(i + 1);
    ConeSet proper = f.faces_of(i);
    proper.erase(i);
    if (proper.is_subset_of(current)) {
      current.insert(i);
      rec(i + 1);
      current.erase(i);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const ConeSet& a, const ConeSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

std::vector<ConeSet> orbit_poset(const Fan& f) {
  std::vector<ConeSet> out;
  out.reserve(f.num_cones());
  for (std::size_t i = 0; i < f.num_cones(); ++i) out.push_back(f.star_of(i));
  return out;
}

std::optional<std::size_t> limit_of_generic_point(const Fan& f, const IntVector& v) {
  if (v.size() != f.dim()) throw DimensionError("limit_of_generic_point: wrong length");
  for (std::size_t i = 0; i < f.num_cones(); ++i)
    if (f.cone(i).in_relative_interior(v)) return i;
  return std::nullopt;
}

// ---- automorphisms ----------------------------------------------------------

std::optional<FanAutomorphism> as_fan_automorphism(const Fan& f, const IntMatrix& m) {
  if (m.rows() != f.dim() || m.cols() != f.dim()) throw DimensionError("automorphism: wrong shape");
  Integer det = determinant(m);
  if (det != 1 && det != -1) return std::nullopt;
  FanAutomorphism a{m, {}, {}};
  const auto& rays = f.rays();
  std::map<IntVector, std::size_t> where;
  for (std::size_t i = 0; i < rays.size(); ++i) where[rays[i]] = i;
  for (const auto& r : rays) {
    auto it = where.find(m.apply(r));
    if (it == where.end()) return std::nullopt;
    a.ray_permutation.push_back(it->second);
  }
  for (std::size_t c = 0; c < f.num_cones(); ++c) {
    RaySet img;
    for (auto r : f.cone_rays(c)) img.push_back(a.ray_permutation[r]);
    auto idx = f.index_of(img);
    if (!idx) return std::nullopt;
    a.cone_permutation.push_back(*idx);
  }
  return a;
}

std::vector<FanAutomorphism> fan_automorphisms(const Fan& f) {
  const std::size_t d = f.dim();
  const auto& rays = f.rays();
  RaySet basis;
  {
    std::vector<IntVector> chosen;
    for (std::size_t i = 0; i < rays.size() && basis.size() < d; ++i) {
      chosen.push_back(rays[i]);
      if (rank_of(chosen) == chosen.size())
        basis.push_back(i);
      else
        chosen.pop_back();
    }
  }
  if (basis.size() != d) throw std::invalid_argument("fan_automorphisms: rays do not span Q^d");

  // A = T * adj(B) / det(B), where B has the basis rays as columns.
  IntMatrix b(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t r = 0; r < d; ++r) b(r, k) = rays[basis[k]][r];
  const Integer det_b = determinant(b);
  IntMatrix adj(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      IntMatrix minor(d - 1, d - 1);
      for (std::size_t r = 0, mr = 0; r < d; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < d; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = b(r, c);
        }
        ++mr;
      }
      adj(i, j) = ((i + j) % 2 ? -1 : 1) * determinant(minor);
    }

  std::vector<FanAutomorphism> out;
  std::vector<std::size_t> target(d);
  std::vector<bool> used(rays.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == d) {
      IntMatrix t(d, d);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) t(r, c) = rays[target[c]][r];
      IntMatrix num = t * adj;
      IntMatrix m(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          if (!mpz_divisible_p(num(r, c).get_mpz_t(), det_b.get_mpz_t())) return;
          m(r, c) = num(r, c) / det_b;
        }
      if (auto a = as_fan_automorphism(f, m)) out.push_back(std::move(*a));
      return;
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      target[k] = i;
      rec(k + 1);
      used[i] = false;
    }
  };
  rec(0);

  const IntMatrix id = IntMatrix::identity(d);
  std::sort(out.begin(), out.end(), [&](const FanAutomorphism& x, const FanAutomorphism& y) {
    bool xi = x.matrix == id, yi = y.matrix == id;
    if (xi != yi) return xi;
    return x.matrix.row_list() < y.matrix.row_list();
  });
  return out;
}

FanAutomorphism compose(const Fan& f, const FanAutomorphism& a, const FanAutomorphism& b) {
  auto c = as_fan_automorphism(f, a.matrix * b.matrix);
  if (!c) throw std::logic_error("compose: product does not preserve the fan");
  return *c;
}

FanAutomorphism inverse(const Fan& f, const FanAutomorphism& a) {
  auto c = as_fan_automorphism(f, unimodular_inverse(a.matrix));
  if (!c) throw std::logic_error("inverse: inverse does not preserve the fan");
  return *c;
}

}  // namespace toricq
