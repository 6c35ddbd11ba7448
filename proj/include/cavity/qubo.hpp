#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cavity/instances.hpp"
#include "cavity/subset_sum.hpp"

namespace cavity {

/// Ising form of a QUBO objective: H(s) = -sum J_ij s_i s_j - sum h_j s_j + offset,
/// spins in {-1,+1}, satisfying f_Q(x) = H(s) exactly under x = (1+s)/2.
struct IsingModel {
  int n = 0;
  std::vector<std::vector<Rational>> couplings;  // J, symmetric, zero diagonal
  std::vector<Rational> fields;                  // h
  Rational offset = 0;

  Rational energy(const std::vector<int>& spins) const;  // spins in {-1,+1}
};

IsingModel qubo_to_ising(const QuboInstance& q);

/// One parity constraint z_a z_b z_c z_d = +1.  Slot value -1 marks the
/// identity pair (i,i) that appears on boundary plaquettes; those reduce to
/// three-variable constraints with the constant +1 in the product.
struct Plaquette {
  std::array<int, 4> slots;  // parity-variable indices (0-based), or -1
};

/// Parity-coded program: one binary/spin variable z per spin pair, all
/// couplings turned into linear costs, plus plaquette constraints.
/// Local fields ride along via the s_1 = +1 gauge as costs on the z_{1j}
/// variables; the two global spin branches swap the sign of that part, so
/// both cost vectors are carried (they coincide when all fields vanish).
struct ParityProgram {
  int spin_count = 0;
  std::vector<std::pair<int, int>> pairs;  // lexicographic (i, j), 1-based spins, i < j
  std::vector<Plaquette> plaquettes;
  std::vector<Rational> coupling_costs;  // energy contribution coupling_costs[k] * z_k
  std::vector<Rational> field_costs;     // gauge part: adds on branch +, subtracts on branch -
  Rational constant_plus = 0;            // branch-dependent constants
  Rational constant_minus = 0;

  int num_parity_vars() const { return static_cast<int>(pairs.size()); }
  /// Energy of one spin branch at a parity assignment (z entries in {-1,+1}).
  Rational branch_energy(const std::vector<int>& z, bool plus_branch) const;
};

ParityProgram parity_transform(const IsingModel& m);

/// Per plaquette, the eight-clause block over 4 parity bits and one fresh
/// auxiliary; variables are ordered parity bits first (pair order), then one
/// auxiliary per plaquette in plaquette order.
CnfFormula plaquette_to_3sat(const ParityProgram& p);

/// Full pipeline artifact: linear part over the subset-sum selectors plus the
/// penalty weight applied to the squared constraint residual.
struct PenalizedObjective {
  SubsetSumInstance constraint;  // encode_3sat of the parity CNF
  ParityProgram parity;
  CnfFormula parity_cnf;
  IsingModel ising;
  int parity_var_count = 0;
  // Linear costs over the first parity_var_count selectors, one vector per
  // spin branch; identical when the Ising fields vanish.
  std::vector<Rational> linear_costs;
  std::vector<Rational> linear_costs_alt;
  Rational constant = 0;
  Rational constant_alt = 0;
  Rational delta = 0;  // penalty weight, recorded for audit

  bool branches_differ() const { return linear_costs != linear_costs_alt; }
  /// Value of one branch's objective at a full selector assignment, with the
  /// penalty term evaluated from the exact constraint residual (0 or not).
  Rational linear_value(const std::vector<bool>& y, bool plus_branch) const;
};

PenalizedObjective qubo_compile(const QuboInstance& q);

/// Reference minimizer used by tests: scans the feasible parity manifold
/// (every spin assignment, both branches) and returns the optimal QUBO
/// assignment together with its parity bits.
struct PipelineMinimum {
  Rational value = 0;
  std::vector<int> x;       // optimal binary assignment of the source QUBO
  std::vector<int> z;       // its spin products, one per pair
  bool plus_branch = true;
};
PipelineMinimum pipeline_minimize(const PenalizedObjective& p);

// --- section 4.2-4.6 formulations ---------------------------------------------

enum class FormulationKind { Bilp, Knapsack, JobSequencing, HamiltonianCycle, Tsp };

std::string formulation_name(FormulationKind kind);
FormulationKind formulation_from_name(const std::string& name);

using FormulationSource =
    std::variant<BilpInstance, KnapsackInstance, JobSequencingInstance, Graph>;

/// A QUBO formulation with its variable layout and penalty constants.
struct QuboFormulation {
  FormulationKind kind{};
  FormulationSource source;
  QuboInstance qubo;
  Rational delta = 0;        // knapsack / tsp objective scale
  Rational alpha = 0, beta = 0;  // bilp penalty ratio
  std::vector<std::string> variable_names;  // layout audit, one per binary variable
};

QuboFormulation bilp_to_qubo(const BilpInstance& b);
QuboFormulation knapsack_to_qubo(const KnapsackInstance& k);
QuboFormulation jobseq_to_qubo(const JobSequencingInstance& j);
QuboFormulation hamcycle_to_qubo(const Graph& g);
QuboFormulation tsp_to_qubo(const Graph& g);

/// Original-vocabulary solution from a binary assignment of a formulation
/// QUBO; reports constraint violations instead of guessing.
struct QuboDecoded {
  std::string problem;
  bool constraints_satisfied = false;
  std::string certificate;
  std::vector<int> items;                 // knapsack
  std::vector<int> tour;                  // hamcycle / tsp, vertex per position
  std::vector<int> machine_of_job;        // jobseq
  std::vector<int> x;                     // bilp
  Rational objective = 0;                 // native objective when satisfied
};

QuboDecoded qubo_decode(const QuboFormulation& f, const std::vector<int>& x);

/// Exhaustive scaled-integer scan of all 2^n assignments (Gray order,
/// OpenMP-partitioned).  Returns the first minimizer in walk order.
struct QuboMinimum {
  Rational value = 0;
  std::vector<int> x;
};
QuboMinimum qubo_brute_force_min(const QuboInstance& q, unsigned cap_bits = 26);

} // namespace cavity
