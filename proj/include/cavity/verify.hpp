#pragma once

#include <string>

#include "cavity/brute_force.hpp"
#include "cavity/oracle.hpp"
#include "cavity/reductions.hpp"

namespace cavity {

/// Dual brute-force verdict for one (problem, instance, k) triple: the native
/// decision must agree with subset-sum feasibility, every subset witness must
/// decode to a valid solution, and every native witness must forward-map onto
/// the exact target.
struct EquivalenceReport {
  std::string problem;
  int k = -1;
  long weight_count = 0;
  bool original_feasible = false;
  bool subset_feasible = false;
  bool agreement = false;
  long subset_witnesses_checked = 0;
  long forward_maps_checked = 0;
  std::string failure;  // empty on success
  bool ok() const { return failure.empty() && agreement; }
};

EquivalenceReport verify_equivalence(ProblemKind kind, const SourceInstance& instance, int k);

} // namespace cavity
