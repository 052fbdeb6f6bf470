#pragma once

#include "toricq/corpus.hpp"
#include "toricq/symmetry.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace toricq {

struct SweepOptions {
  long bound = 6;  // invariant box for the oracle
  std::size_t max_subsets = std::size_t{1} << 20;
  std::size_t max_failures = 20;  // failure descriptions kept
};

/// Counts from one pass over a corpus of fans and all sweep lines.
struct SweepStats {
  std::size_t fans = 0;
  std::size_t instances = 0;  // (fan, line) pairs

  std::size_t selections = 0;
  std::size_t good = 0;
  std::size_t oracle_disagreements = 0;
  std::size_t charts_checked = 0;
  std::size_t hilbert_comparisons = 0;
  std::size_t chart_ring_failures = 0;

  std::size_t quotient_fans = 0;
  std::size_t invariant_violations = 0;
  std::size_t property_violations = 0;

  std::size_t t_maximal_sets = 0;
  std::size_t ak_mismatches = 0;  // instances where k = 1 and k = 2 differ
  std::size_t theorem_checks = 0;
  std::size_t theorem_failures = 0;

  std::size_t staged_runs = 0;
  std::size_t staged_both_exist = 0;
  std::size_t staged_inconsistent = 0;

  std::size_t max_sat_checks = 0;
  std::size_t max_sat_mismatches = 0;

  std::size_t eq1_groups = 0;  // (fan, line, symmetry group) triples
  std::size_t eq1_instances = 0;
  std::size_t eq1_equal = 0;
  std::size_t eq1_unequal = 0;
  std::size_t eq1_skipped = 0;  // hypotheses fail
  std::size_t eq1_identity_failures = 0;

  std::vector<std::string> failures;
};

/// Trivial group plus the cyclic group of each symmetry preserving L, and the
/// full stabiliser of L; duplicates removed.
std::vector<SymmetryGroup> compatible_symmetry_groups(std::shared_ptr<const Fan> fan, const Sublattice& l);

SweepStats run_sweep(const std::vector<CorpusFan>& fans, const SweepOptions& options = {});

}  // namespace toricq
