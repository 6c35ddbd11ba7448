#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cavity/radical.hpp"

namespace cavity {

/// Conjunction of exactly-3-literal clauses.  Literals are signed 1-based
/// variable indices; repeats within a clause are allowed.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
  bool satisfies(const std::vector<int>& assignment) const;  // assignment[i-1] in {0,1}
};

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based endpoints; ordered pairs when directed
  bool directed = false;
  std::vector<Rational> weights;  // per-edge, empty unless weighted

  int num_edges() const { return static_cast<int>(edges.size()); }
  bool weighted() const { return !weights.empty(); }
  bool has_edge(int u, int v) const;  // respects directedness
  int degree(int v) const;            // undirected incidence count
};

struct SetSystem {
  int universe_size = 0;
  std::vector<std::vector<int>> subsets;  // element indices in [1, universe_size]

  int num_subsets() const { return static_cast<int>(subsets.size()); }
};

struct KnapsackInstance {
  std::vector<long> weights;
  std::vector<long> values;
  long capacity = 0;

  int num_items() const { return static_cast<int>(weights.size()); }
};

struct BilpInstance {
  std::vector<std::vector<long>> A;  // m x n
  std::vector<long> b;               // m
  std::vector<long> c;               // n

  int num_rows() const { return static_cast<int>(A.size()); }
  int num_cols() const { return A.empty() ? 0 : static_cast<int>(A[0].size()); }
};

struct JobSequencingInstance {
  std::vector<long> durations;
  int machines = 0;
  long deadline = 0;

  int num_jobs() const { return static_cast<int>(durations.size()); }
};

/// Canonical form: Q symmetric with zero diagonal (diagonal folded into the
/// linear part, since b_i^2 = b_i over binary variables), plus a constant
/// offset so formulation Hamiltonians evaluate exactly.
struct QuboInstance {
  int n = 0;
  std::vector<std::vector<Rational>> quadratic;
  std::vector<Rational> linear;
  Rational offset = 0;

  Rational value(const std::vector<int>& x) const;  // x entries in {0,1}
};

/// Normalizes (folds diagonal, checks symmetry) and returns the canonical instance.
QuboInstance make_qubo(int n, std::vector<std::vector<Rational>> quadratic,
                       std::vector<Rational> linear = {}, Rational offset = 0);

// --- parsing -----------------------------------------------------------------

/// DIMACS CNF; every clause must have exactly 3 literals unless pad_to_3sat is
/// set, in which case 1- and 2-literal clauses get a literal duplicated.
CnfFormula parse_cnf(std::istream& in, bool pad_to_3sat = false);
CnfFormula parse_cnf(const std::string& text, bool pad_to_3sat = false);
std::string serialize_cnf(const CnfFormula& f);

/// DIMACS edge format ("p edge n m", "e u v [w]") or the JSON adjacency form
/// {"n":..,"edges":[[u,v],..],"directed":bool,"weights":[..]}.
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);  // DIMACS when unweighted+undirected, else JSON

/// JSON instances; kind is one of set-system, knapsack, bilp, jobseq, qubo.
/// Schema violations raise FormatError carrying a JSON pointer path.
SetSystem parse_set_system(const std::string& json_text);
KnapsackInstance parse_knapsack(const std::string& json_text);
BilpInstance parse_bilp(const std::string& json_text);
JobSequencingInstance parse_jobseq(const std::string& json_text);
QuboInstance parse_qubo(const std::string& json_text);

std::string serialize_set_system(const SetSystem& s);
std::string serialize_knapsack(const KnapsackInstance& k);
std::string serialize_bilp(const BilpInstance& b);
std::string serialize_jobseq(const JobSequencingInstance& j);
std::string serialize_qubo(const QuboInstance& q);

/// Exact rational from "p/q", "p", or a JSON number.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

} // namespace cavity
