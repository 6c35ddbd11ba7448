#pragma once

#include <cstdint>
#include <vector>

#include "cavity/subset_sum.hpp"

namespace cavity {

struct OracleOptions {
  bool all_witnesses = false;   // otherwise stop at the first (lowest subset index)
  bool allow_empty = true;      // count the empty subset when the target is zero
  unsigned cap_bits = 26;       // enumeration refuses instances beyond 2^cap_bits subsets
  bool parallel = true;         // OpenMP-partitioned walk; serial reference otherwise
};

struct OracleResult {
  bool feasible = false;
  std::vector<std::vector<bool>> witnesses;  // each re-verified by exact Radical summation
  std::uint64_t explored = 0;                // subsets visited
};

/// Exhaustive enumeration over all 2^K subsets with exact sums, Gray-code
/// order so each step is one add/sub.  Throws SizeCapError when K exceeds
/// cap_bits.  Witness order follows the fixed walk, so results are identical
/// regardless of thread count.
OracleResult oracle_subset_sum(const SubsetSumInstance& inst, const OracleOptions& opt = {});

/// Single-threaded reference walk; same contract, kept for testing and the
/// enumeration benchmark.
OracleResult oracle_subset_sum_serial(const SubsetSumInstance& inst, const OracleOptions& opt = {});

/// Complete depth-first search with sound per-rank bound pruning.  Exact like
/// the enumeration (every leaf reached is a true solution, pruned branches
/// provably contain none) but not capped, so it covers instances such as
/// dense dominating-set encodings whose weight count exceeds the enumeration
/// cap.  Cross-validated against enumeration in the test suite.
OracleResult oracle_subset_sum_dfs(const SubsetSumInstance& inst, const OracleOptions& opt = {});

/// Enumeration when it fits under the cap, DFS beyond it.
OracleResult oracle_subset_sum_auto(const SubsetSumInstance& inst, const OracleOptions& opt = {});

} // namespace cavity
