#include "toricq/cone.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace toricq {

namespace {

using ZeroSet = std::vector<bool>;

bool subset_of_intersection(const ZeroSet& a, const ZeroSet& b, const ZeroSet& r) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i] && !r[i]) return false;
  return true;
}

/// Lattice basis (row HNF) of the rational span of `vs`.
std::vector<IntVector> saturated_span_basis(std::size_t dim, const std::vector<IntVector>& vs) {
  if (vs.empty()) return {};
  return saturate(Sublattice(dim, vs)).basis();
}

/// Projects v along span(basis) onto the coordinate complement of the pivot
/// columns of the HNF basis; keeps the direction of v modulo the span.
IntVector reduce_modulo(IntVector v, const std::vector<IntVector>& hnf_basis) {
  for (const auto& h : hnf_basis) {
    std::size_t p = 0;
    while (h[p] == 0) ++p;
    if (v[p] == 0) continue;
    v = combine(h[p], v, -v[p], h);  // h[p] > 0
  }
  return make_primitive(std::move(v));
}

struct CanonicalSide {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

CanonicalSide canonicalize(std::size_t dim, const DoubleDescription& dd) {
  CanonicalSide out;
  out.lineality = saturated_span_basis(dim, dd.lineality);
  std::set<IntVector> seen;
  for (const auto& r : dd.rays) {
    IntVector red = reduce_modulo(r, out.lineality);
    if (is_zero(red)) continue;
    seen.insert(std::move(red));
  }
  out.rays.assign(seen.begin(), seen.end());
  return out;
}

std::vector<IntVector> with_both_signs(std::vector<IntVector> base,
                                       const std::vector<IntVector>& extra) {
  for (const auto& e : extra) {
    base.push_back(e);
    base.push_back(negated(e));
  }
  return base;
}

void check_lengths(std::size_t dim, const std::vector<IntVector>& vs, const char* what) {
  for (const auto& v : vs)
    if (v.size() != dim)
      throw DimensionError(std::string(what) + ": vector " + to_string(v) + " not in dimension " +
                           std::to_string(dim));
}

}  // namespace

DoubleDescription double_description(std::size_t dim, const std::vector<IntVector>& constraints) {
  check_lengths(dim, constraints, "double_description");
  DoubleDescription dd;
  dd.lineality = IntMatrix::identity(dim).row_list();

  std::vector<IntVector> processed;
  std::vector<ZeroSet> zero_sets;  // per ray, over processed constraints

  for (const auto& a : constraints) {
    if (is_zero(a)) continue;

    auto lin_it = std::find_if(dd.lineality.begin(), dd.lineality.end(),
                               [&](const IntVector& l) { return dot(a, l) != 0; });
    if (lin_it != dd.lineality.end()) {
      IntVector l = *lin_it;
      Integer al = dot(a, l);
      if (al < 0) {
        l = negated(std::move(l));
        al = -al;
      }
      std::vector<IntVector> lineality;
      for (auto it = dd.lineality.begin(); it != dd.lineality.end(); ++it) {
        if (it == lin_it) continue;
        lineality.push_back(make_primitive(combine(al, *it, -dot(a, *it), l)));
      }
      for (std::size_t i = 0; i < dd.rays.size(); ++i) {
        dd.rays[i] = make_primitive(combine(al, dd.rays[i], -dot(a, dd.rays[i]), l));
        zero_sets[i].push_back(true);
      }
      // l is tight on every earlier constraint, strictly positive on a.
      dd.rays.push_back(make_primitive(l));
      zero_sets.emplace_back(processed.size(), true);
      zero_sets.back().push_back(false);
      dd.lineality = std::move(lineality);
      processed.push_back(a);
      continue;
    }

    std::vector<Integer> values;
    values.reserve(dd.rays.size());
    bool any_negative = false;
    for (const auto& r : dd.rays) {
      values.push_back(dot(a, r));
      if (values.back() < 0) any_negative = true;
    }
    if (!any_negative) {
      for (std::size_t i = 0; i < dd.rays.size(); ++i) zero_sets[i].push_back(values[i] == 0);
      processed.push_back(a);
      continue;
    }

    std::vector<IntVector> rays;
    std::vector<ZeroSet> zs;
    for (std::size_t i = 0; i < dd.rays.size(); ++i) {
      if (values[i] < 0) continue;
      rays.push_back(dd.rays[i]);
      zs.push_back(zero_sets[i]);
      zs.back().push_back(values[i] == 0);
    }
    for (std::size_t p = 0; p < dd.rays.size(); ++p) {
      if (values[p] <= 0) continue;
      for (std::size_t n = 0; n < dd.rays.size(); ++n) {
        if (values[n] >= 0) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < dd.rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (subset_of_intersection(zero_sets[p], zero_sets[n], zero_sets[r])) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector v = make_primitive(combine(values[p], dd.rays[n], -values[n], dd.rays[p]));
        ZeroSet z(processed.size() + 1, false);
        for (std::size_t i = 0; i < processed.size(); ++i) z[i] = zero_sets[p][i] && zero_sets[n][i];
        z.back() = true;
        rays.push_back(std::move(v));
        zs.push_back(std::move(z));
      }
    }
    dd.rays = std::move(rays);
    zero_sets = std::move(zs);
    processed.push_back(a);
  }
  return dd;
}

// ---- Cone -------------------------------------------------------------------

Cone Cone::from_generators(std::size_t dim, const std::vector<IntVector>& generators) {
  check_lengths(dim, generators, "Cone::from_generators");
  Cone c;
  c.ambient_ = dim;
  CanonicalSide dual = canonicalize(dim, double_description(dim, generators));
  c.equations_ = std::move(dual.lineality);
  c.facets_ = std::move(dual.rays);
  CanonicalSide primal = canonicalize(dim, double_description(dim, c.inequalities()));
  c.lineality_ = std::move(primal.lineality);
  c.rays_ = std::move(primal.rays);
  return c;
}

Cone Cone::from_inequalities(std::size_t dim, const std::vector<IntVector>& inequalities) {
  check_lengths(dim, inequalities, "Cone::from_inequalities");
  Cone c;
  c.ambient_ = dim;
  CanonicalSide primal = canonicalize(dim, double_description(dim, inequalities));
  c.lineality_ = std::move(primal.lineality);
  c.rays_ = std::move(primal.rays);
  CanonicalSide dual = canonicalize(dim, double_description(dim, c.generators()));
  c.equations_ = std::move(dual.lineality);
  c.facets_ = std::move(dual.rays);
  return c;
}

Cone Cone::zero(std::size_t dim) { return from_generators(dim, {}); }
Cone Cone::full(std::size_t dim) { return from_inequalities(dim, {}); }

std::vector<IntVector> Cone::generators() const { return with_both_signs(rays_, lineality_); }
std::vector<IntVector> Cone::inequalities() const { return with_both_signs(facets_, equations_); }

bool Cone::contains(const IntVector& v) const {
  if (v.size() != ambient_) throw DimensionError("Cone::contains: wrong length");
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, v) < 0) return false;
  return true;
}

bool Cone::contains(const RationalVector& v) const { return contains(clear_denominators(v)); }

bool Cone::contains(const Cone& other) const {
  if (other.ambient_ != ambient_) throw DimensionError("Cone::contains: ambient mismatch");
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

bool Cone::in_relative_interior(const IntVector& v) const {
  if (v.size() != ambient_) throw DimensionError("Cone::in_relative_interior: wrong length");
  for (const auto& e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, v) <= 0) return false;
  return true;
}

IntVector Cone::relative_interior_point() const {
  IntVector p(ambient_, Integer(0));
  for (const auto& r : rays_) p = add(p, r);
  return p;
}

bool Cone::is_simplicial() const {
  // A cone with lineality needs the dependent pair +-l among its generators.
  return lineality_.empty() && rank_of(rays_) == rays_.size();
}

// ---- operations -----------------------------------------------------------

Cone dual_cone(const Cone& c) {
  return Cone::from_generators(c.ambient_dim(), c.inequalities());
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionError("intersect: cones live in Q^" + std::to_string(a.ambient_dim()) +
                         " and Q^" + std::to_string(b.ambient_dim()));
  std::vector<IntVector> ineqs = a.inequalities();
  for (const auto& x : b.inequalities()) ineqs.push_back(x);
  return Cone::from_inequalities(a.ambient_dim(), ineqs);
}

std::vector<Cone> faces(const Cone& c) {
  const auto& rays = c.rays();
  const auto& facets = c.facet_normals();
  std::vector<std::vector<bool>> tight(facets.size(), std::vector<bool>(rays.size()));
  for (std::size_t f = 0; f < facets.size(); ++f)
    for (std::size_t r = 0; r < rays.size(); ++r) tight[f][r] = dot(facets[f], rays[r]) == 0;

  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> queue{std::vector<bool>(rays.size(), true)};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& t : tight) {
      std::vector<bool> next(rays.size());
      for (std::size_t r = 0; r < rays.size(); ++r) next[r] = queue[head][r] && t[r];
      if (seen.insert(next).second) queue.push_back(next);
    }
  }

  std::vector<Cone> out;
  out.reserve(queue.size());
  for (const auto& sel : queue) {
    std::vector<IntVector> gens = c.lineality_basis();
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (sel[r]) gens.push_back(rays[r]);
    // Lineality vectors enter with both signs through the canonical basis.
    for (const auto& l : c.lineality_basis()) gens.push_back(negated(l));
    out.push_back(Cone::from_generators(c.ambient_dim(), gens));
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rays() < b.rays();
  });
  return out;
}

bool is_face_of(const Cone& f, const Cone& c) {
  if (f.ambient_dim() != c.ambient_dim()) throw DimensionError("is_face_of: ambient mismatch");
  if (!c.contains(f)) return false;
  const auto fgens = f.generators();
  std::vector<IntVector> gens = c.lineality_basis();
  for (const auto& l : c.lineality_basis()) gens.push_back(negated(l));
  for (const auto& r : c.rays()) {
    bool keep = true;
    for (const auto& facet : c.facet_normals()) {
      bool vanishes_on_f = std::all_of(fgens.begin(), fgens.end(),
                                       [&](const IntVector& g) { return dot(facet, g) == 0; });
      if (vanishes_on_f && dot(facet, r) != 0) {
        keep = false;
        break;
      }
    }
    if (keep) gens.push_back(r);
  }
  return Cone::from_generators(c.ambient_dim(), gens) == f;
}

Cone image_cone(const Cone& c, const IntMatrix& map) {
  if (map.cols() != c.ambient_dim())
    throw DimensionError("image_cone: map has " + std::to_string(map.cols()) +
                         " columns, cone lives in Q^" + std::to_string(c.ambient_dim()));
  std::vector<IntVector> gens;
  for (const auto& g : c.generators()) gens.push_back(map.apply(g));
  return Cone::from_generators(map.rows(), gens);
}

Cone preimage_cone(const Cone& c, const IntMatrix& map) {
  if (map.rows() != c.ambient_dim()) throw DimensionError("preimage_cone: dimension mismatch");
  IntMatrix t = map.transpose();
  std::vector<IntVector> ineqs;
  for (const auto& a : c.inequalities()) ineqs.push_back(t.apply(a));
  return Cone::from_inequalities(map.cols(), ineqs);
}

HilbertBasisResult hilbert_basis(const Cone& c, long bound) {
  if (!c.is_pointed()) throw std::invalid_argument("hilbert_basis: cone is not pointed");
  if (bound < 1) throw std::invalid_argument("hilbert_basis: bound must be at least 1");
  const std::size_t d = c.ambient_dim();
  HilbertBasisResult result;

  std::vector<long> lo(d, 0), hi(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    Integer l = 0, h = 0;
    for (const auto& r : c.rays()) (r[j] < 0 ? l : h) += r[j];
    if (l < -bound || h > bound) {
      result.status = HilbertBasisResult::Status::BoundExceeded;
      return result;
    }
    lo[j] = l.get_si();
    hi[j] = h.get_si();
  }

  std::vector<IntVector> points;
  IntVector x(d);
  std::vector<long> cur = lo;
  if (d > 0) {
    while (true) {
      for (std::size_t j = 0; j < d; ++j) x[j] = cur[j];
      if (!is_zero(x) && c.contains(x)) points.push_back(x);
      std::size_t j = 0;
      while (j < d && cur[j] == hi[j]) {
        cur[j] = lo[j];
        ++j;
      }
      if (j == d) break;
      ++cur[j];
    }
  }

  for (const auto& p : points) {
    bool reducible = false;
    for (const auto& q : points) {
      if (&q == &p) continue;
      IntVector diff = combine(1, p, -1, q);
      if (!is_zero(diff) && c.contains(diff)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) result.elements.push_back(p);
  }
  std::sort(result.elements.begin(), result.elements.end());
  return result;
}

}  // namespace toricq
