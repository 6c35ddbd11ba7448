#pragma once

#include <vector>

#include "cavity/instances.hpp"
#include "cavity/subset_sum.hpp"

namespace cavity {

// The ten linear-overhead encoders.  Each returns a SubsetSumInstance whose
// feasibility is equivalent to the source decision problem; the rank windows
// and weight order follow the constructions exactly:
//
//   3sat            clause ranks 1..m, variable ranks m+1..m+n;  weights a_1..a_n b_1..b_n c_1..c_m d_1..d_m
//   vertex-cover    edge ranks 1..m, marker rank m+1;            weights a_1..a_n b_1..b_m
//   mis             edge ranks 1..m, marker rank m+1;            weights a_1..a_n b_1..b_m
//   clique          vertex ranks 1..n, marker rank n+1;          weights a_1..a_n then one pair weight per edge
//   matching        vertex ranks 1..n, marker rank n+1;          weights a_1..a_n then one pick per edge
//   exact-cover     element ranks 1..m;                          one weight per subset
//   set-packing     element ranks 1..u, marker rank u+1;         element units then subset picks
//   maxcut          edge ranks 1..m, marker rank m+1;            vertex weights, then CutBoth, then CutOne
//   dominating-set  vertex ranks 1..n, edge ranks n+1..n+m, marker n+m+1;
//                   vertex weights, DomEdgeBoth, DomEdgeOne, then surplus weights per (vertex, 1..degree)
//   3coloring       vertex ranks 1..n, edge-color ranks n+3j-2..n+3j;
//                   color picks vertex-major, then edge color slacks

SubsetSumInstance encode_3sat(const CnfFormula& f);
SubsetSumInstance encode_vertex_cover(const Graph& g, int k);
SubsetSumInstance encode_mis(const Graph& g, int k);
SubsetSumInstance encode_clique(const Graph& g, int k);
SubsetSumInstance encode_matching(const Graph& g, int k);
SubsetSumInstance encode_exact_cover(const SetSystem& s);
SubsetSumInstance encode_set_packing(const SetSystem& s, int k);
SubsetSumInstance encode_maxcut(const Graph& g, int k);
SubsetSumInstance encode_dominating_set(const Graph& g, int k);
SubsetSumInstance encode_3coloring(const Graph& g);

/// Dispatch on kind; k ignored where the problem takes none.
SubsetSumInstance encode(ProblemKind kind, const SourceInstance& instance, int k);

/// Native witness encoding shared by decode / forward_map / the brute-force
/// oracles.  Meaning by problem:
///   3sat            truth value per variable (length n, 0/1)
///   vc, mis, clique, dominating-set, maxcut   sorted vertex list (maxcut: the side U)
///   matching        sorted 1-based edge indices
///   exact-cover, set-packing                  sorted 1-based subset indices
///   3coloring       color per vertex (length n, values 0..2)
using NativeWitness = std::vector<int>;

/// Backward direction of the equivalence proofs: original-problem solution from
/// a subset achieving exact target equality.  Throws PreconditionError when the
/// selection does not sum to the target, InvariantError when the decoded object
/// fails its own validity check (an encoder bug, not bad input).
DecodedSolution decode(const SubsetSumInstance& inst, const std::vector<bool>& chosen);

/// Forward direction: build the subset the proof constructs from a valid
/// original-problem witness.  The result always sums to the target.
std::vector<bool> forward_map(const SubsetSumInstance& inst, const NativeWitness& witness);

/// Validity check of a native witness against the source problem.
bool witness_valid(ProblemKind kind, const SourceInstance& instance, int k,
                   const NativeWitness& witness);

} // namespace cavity
