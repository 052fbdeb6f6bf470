#pragma once

#include "toricq/fan.hpp"
#include "toricq/lattice.hpp"

#include <memory>
#include <string>
#include <vector>

namespace toricq {

struct CorpusFan {
  std::string name;
  std::shared_ptr<const Fan> fan;
};

/// Candidate rays of the generated rank-2 fans: the nonzero vectors of {-1,0,1}^2.
std::vector<IntVector> sweep_generator_list();

/// The sweep corpus: P^1, every complete rank-2 fan with 3 to 6 rays taken
/// from the generator list, and P(1,1,2). Named fans come first; duplicates
/// (same rays) are dropped.
std::vector<CorpusFan> sweep_fans();

/// Primitive vectors with entries in [-2,2]^d, one per line (first nonzero
/// entry positive).
std::vector<IntVector> sweep_lines(std::size_t dim);

/// Complete fan in the plane on the given rays (sorted by angle).
std::shared_ptr<const Fan> complete_plane_fan(std::vector<IntVector> rays);

}  // namespace toricq
