#include "cavity/verify.hpp"

#include "cavity/errors.hpp"

namespace cavity {

EquivalenceReport verify_equivalence(ProblemKind kind, const SourceInstance& instance, int k) {
  EquivalenceReport report;
  report.problem = problem_name(kind);
  report.k = problem_requires_k(kind) ? k : -1;

  SubsetSumInstance inst = encode(kind, instance, k);
  report.weight_count = static_cast<long>(inst.size());

  NativeResult native = oracle_original(kind, instance, k, /*all_witnesses=*/true);
  OracleOptions opt;
  opt.all_witnesses = true;
  OracleResult subset = oracle_subset_sum_auto(inst, opt);

  report.original_feasible = native.feasible;
  report.subset_feasible = subset.feasible;
  report.agreement = native.feasible == subset.feasible;
  if (!report.agreement) {
    report.failure = "feasibility mismatch: native " + std::to_string(native.feasible) +
                     " vs subset-sum " + std::to_string(subset.feasible);
    return report;
  }

  // Backward: every exact-sum subset must decode into a valid solution.
  for (const auto& witness : subset.witnesses) {
    try {
      DecodedSolution sol = decode(inst, witness);
      if (!sol.valid) {
        report.failure = "subset witness decoded to an invalid solution";
        return report;
      }
    } catch (const std::exception& e) {
      report.failure = std::string("decode failed: ") + e.what();
      return report;
    }
    ++report.subset_witnesses_checked;
  }

  // Forward: every native witness must map onto a subset hitting the target.
  for (const auto& witness : native.witnesses) {
    try {
      std::vector<bool> chosen = forward_map(inst, witness);
      if (inst.sum(chosen) != inst.target) {
        report.failure = "forward map missed the target";
        return report;
      }
    } catch (const std::exception& e) {
      report.failure = std::string("forward map failed: ") + e.what();
      return report;
    }
    ++report.forward_maps_checked;
  }
  return report;
}

} // namespace cavity
