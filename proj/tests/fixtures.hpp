#pragma once

#include "toricq/fan.hpp"
#include "toricq/lattice.hpp"

#include <initializer_list>
#include <memory>
#include <vector>

namespace fixtures {

using toricq::Fan;
using toricq::IntMatrix;
using toricq::IntVector;
using toricq::RaySet;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntMatrix mat(std::size_t cols, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> rs;
  for (auto r : rows) rs.push_back(iv(r));
  return IntMatrix::from_rows(cols, rs);
}

inline std::shared_ptr<const Fan> make_fan(std::size_t d, std::vector<IntVector> rays,
                                           std::vector<RaySet> cones) {
  return std::make_shared<const Fan>(d, std::move(rays), std::move(cones));
}

inline std::shared_ptr<const Fan> p1() { return make_fan(1, {iv({1}), iv({-1})}, {{0}, {1}}); }
inline std::shared_ptr<const Fan> a1() { return make_fan(1, {iv({1})}, {{0}}); }
inline std::shared_ptr<const Fan> c2() { return make_fan(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}}); }
// C^2 minus the origin: the two coordinate rays, no 2-cone.
inline std::shared_ptr<const Fan> c2_punctured() {
  return make_fan(2, {iv({1, 0}), iv({0, 1})}, {{0}, {1}});
}
inline std::shared_ptr<const Fan> p2() {
  return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}
inline std::shared_ptr<const Fan> p1xp1() {
  return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1})},
                  {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}
inline std::shared_ptr<const Fan> p112() {
  return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -2})}, {{0, 1}, {1, 2}, {0, 2}});
}
inline std::shared_ptr<const Fan> torus(std::size_t d) { return make_fan(d, {}, {}); }

}  // namespace fixtures
