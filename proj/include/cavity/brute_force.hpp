#pragma once

#include <vector>

#include "cavity/reductions.hpp"

namespace cavity {

struct NativeResult {
  bool feasible = false;
  std::vector<NativeWitness> witnesses;
};

/// Brute-force decision over the problem's native search space (assignments,
/// vertex subsets, subset selections, colorings).  Independent of the
/// subset-sum path: used as ground truth by the equivalence suite.
/// Caps: <= 20 variables, <= 10 vertices, <= 20 subsets; SizeCapError beyond.
NativeResult oracle_original(ProblemKind kind, const SourceInstance& instance, int k,
                             bool all_witnesses = true);

} // namespace cavity
