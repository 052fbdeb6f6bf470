#include "toricq/corpus.hpp"

#include <algorithm>
#include <set>

namespace toricq {

namespace {

// Half-plane index then cross product: a total order by angle in [0, 2pi).
bool angle_less(const IntVector& a, const IntVector& b) {
  auto half = [](const IntVector& v) { return v[1] < 0 || (v[1] == 0 && v[0] < 0); };
  if (half(a) != half(b)) return !half(a);
  return a[0] * b[1] - a[1] * b[0] > 0;
}

Integer cross(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

IntVector v2(long x, long y) { return {Integer(x), Integer(y)}; }

}  // namespace

std::shared_ptr<const Fan> complete_plane_fan(std::vector<IntVector> rays) {
  std::sort(rays.begin(), rays.end(), angle_less);
  std::vector<RaySet> cones;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    RaySet c{i, (i + 1) % rays.size()};
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  return std::make_shared<const Fan>(2, std::move(rays), std::move(cones));
}

std::vector<IntVector> sweep_generator_list() {
  std::vector<IntVector> out;
  for (long x = -1; x <= 1; ++x)
    for (long y = -1; y <= 1; ++y)
      if (x != 0 || y != 0) out.push_back(v2(x, y));
  std::sort(out.begin(), out.end(), angle_less);
  return out;
}

std::vector<CorpusFan> sweep_fans() {
  std::vector<CorpusFan> out;
  out.push_back({"P1", std::make_shared<const Fan>(1, std::vector<IntVector>{{Integer(1)}, {Integer(-1)}},
                                                   std::vector<RaySet>{{0}, {1}})});
  out.push_back({"P2", complete_plane_fan({v2(1, 0), v2(0, 1), v2(-1, -1)})});
  out.push_back({"P1xP1", complete_plane_fan({v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)})});
  out.push_back({"P(1,1,2)", complete_plane_fan({v2(1, 0), v2(0, 1), v2(-1, -2)})});

  std::set<std::vector<IntVector>> seen;
  for (std::size_t k = 1; k < out.size(); ++k) seen.insert(out[k].fan->rays());

  const auto gens = sweep_generator_list();
  const std::size_t n = gens.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const auto bits = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (bits < 3 || bits > 6) continue;
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) rays.push_back(gens[i]);
    // complete iff consecutive rays (cyclically, by angle) turn by less than pi
    bool complete = true;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (cross(rays[i], rays[(i + 1) % rays.size()]) <= 0) complete = false;
    if (!complete) continue;
    auto f = complete_plane_fan(rays);
    if (!seen.insert(f->rays()).second) continue;
    std::string name = "rays";
    for (const auto& r : f->rays()) name += to_string(r);
    out.push_back({name, f});
  }
  return out;
}

std::vector<IntVector> sweep_lines(std::size_t dim) {
  std::vector<IntVector> out;
  IntVector v(dim, Integer(-2));
  while (true) {
    const auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (first != v.end() && *first > 0 && content(v) == 1) out.push_back(v);
    std::size_t k = 0;
    while (k < dim && v[k] == 2) v[k++] = -2;
    if (k == dim) break;
    ++v[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace toricq
