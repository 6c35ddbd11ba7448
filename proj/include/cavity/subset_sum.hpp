#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cavity/instances.hpp"
#include "cavity/radical.hpp"

namespace cavity {

enum class ProblemKind {
  ThreeSat,
  VertexCover,
  Mis,
  Clique,
  Matching,
  ExactCover,
  SetPacking,
  Maxcut,
  DominatingSet,
  ThreeColoring,
};

std::string problem_name(ProblemKind kind);
ProblemKind problem_from_name(const std::string& name);
bool problem_requires_k(ProblemKind kind);

/// Semantic identity of each constructed weight; indices are 1-based in the
/// source instance's vocabulary.  Colors are 0=red, 1=green, 2=blue.
struct RoleTag {
  enum class Kind {
    VarTrue,         // (i)
    VarFalse,        // (i)
    ClauseSlack,     // (j, level in {1,2})
    VertexPick,      // (i)
    EdgeSlack,       // (j)
    EdgePick,        // (i, j) endpoints
    PairPick,        // (i, j) endpoints
    SubsetPick,      // (i)
    ElementUnit,     // (i)
    CutBoth,         // (j)
    CutOne,          // (j)
    DomEdgeBoth,     // (j)
    DomEdgeOne,      // (j)
    DomSurplus,      // (i, level)
    ColorPick,       // (i, color)
    EdgeColorSlack,  // (j, color)
  };

  Kind kind{};
  int a = 0;
  int b = 0;

  bool operator==(const RoleTag&) const = default;

  std::string to_text() const;  // e.g. "ClauseSlack(2,1)", "ColorPick(3,red)"
  static RoleTag from_text(const std::string& text);
};

using SourceInstance = std::variant<std::monostate, CnfFormula, Graph, SetSystem>;

struct SourceInfo {
  ProblemKind kind{};
  SourceInstance instance;
  int k = -1;  // decision parameter; -1 when the problem takes none
  // Cost audit against the per-problem atom-count formula.
  std::string cost_formula;
  long n = 0;  // formula operands, per-problem meaning
  long m = 0;
  long expected_weights = 0;
};

/// Subset-sum instance over exact Radical weights, plus the decode map.
struct SubsetSumInstance {
  std::vector<Radical> weights;
  Radical target;
  std::vector<RoleTag> roles;
  SourceInfo source;

  std::size_t size() const { return weights.size(); }
  Radical sum(const std::vector<bool>& chosen) const;

  /// Construction-time invariants: |weights| == |roles| == cost formula.
  /// Throws InvariantError.
  void validate() const;

  /// Target ranks no weight touches.  Non-empty marks a structurally
  /// infeasible instance (e.g. an uncoverable element in exact cover); such
  /// instances are legal artifacts, so this is diagnostic, not fatal.
  std::vector<SquarefreeRank> unused_target_ranks() const;
};

/// Original-vocabulary solution reconstructed from a feasible subset (or from
/// a QUBO assignment), with its validity certificate.
struct DecodedSolution {
  std::string problem;
  bool valid = false;
  std::string certificate;

  std::vector<int> assignment;                 // 3sat: per-variable truth values
  std::vector<int> vertex_set;                 // cover / independent set / clique / dominating set / cut side U
  std::vector<std::pair<int, int>> edge_set;   // matching
  std::vector<int> subset_ids;                 // exact cover / set packing
  std::vector<int> coloring;                   // per-vertex color 0..2
};

} // namespace cavity
