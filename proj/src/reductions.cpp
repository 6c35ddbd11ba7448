#include "cavity/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "cavity/errors.hpp"

namespace cavity {

namespace {

void check_k(int k, int lo, int hi, const std::string& what) {
  if (k < lo || k > hi)
    throw PreconditionError(what + ": k = " + std::to_string(k) + " out of range [" +
                            std::to_string(lo) + "," + std::to_string(hi) + "]");
}

SquarefreeRank rank(long p) { return static_cast<SquarefreeRank>(p); }

// Distinct (variable, positive?) incidences of a clause; repeated literals
// count once, so weight coefficients stay 0/1 per clause rank.
std::vector<std::pair<int, bool>> clause_incidences(const std::array<int, 3>& clause) {
  std::vector<std::pair<int, bool>> inc;
  for (int lit : clause) {
    std::pair<int, bool> p{std::abs(lit), lit > 0};
    if (std::find(inc.begin(), inc.end(), p) == inc.end()) inc.push_back(p);
  }
  return inc;
}

} // namespace

SubsetSumInstance encode_3sat(const CnfFormula& f) {
  if (f.num_vars < 1) throw PreconditionError("encode 3sat: formula has no variables");
  const long n = f.num_vars;
  const long m = f.num_clauses();
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::ThreeSat;
  inst.source.instance = f;
  inst.source.cost_formula = "2(n+m)";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = 2 * (n + m);

  // a_i / b_i: variable marker sqrt(alpha_{m+i}) plus one clause radical per
  // clause containing the literal.
  std::vector<Radical> pos(static_cast<std::size_t>(n)), neg(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    pos[static_cast<std::size_t>(i)] = Radical::term(rank(m + i + 1));
    neg[static_cast<std::size_t>(i)] = Radical::term(rank(m + i + 1));
  }
  for (long j = 0; j < m; ++j) {
    for (auto [var, positive] : clause_incidences(f.clauses[static_cast<std::size_t>(j)])) {
      auto& w = positive ? pos[static_cast<std::size_t>(var - 1)] : neg[static_cast<std::size_t>(var - 1)];
      w += Radical::term(rank(j + 1));
    }
  }
  for (long i = 0; i < n; ++i) {
    inst.weights.push_back(pos[static_cast<std::size_t>(i)]);
    inst.roles.push_back({RoleTag::Kind::VarTrue, static_cast<int>(i + 1), 0});
  }
  for (long i = 0; i < n; ++i) {
    inst.weights.push_back(neg[static_cast<std::size_t>(i)]);
    inst.roles.push_back({RoleTag::Kind::VarFalse, static_cast<int>(i + 1), 0});
  }
  for (int level = 1; level <= 2; ++level) {
    for (long j = 0; j < m; ++j) {
      inst.weights.push_back(Radical::term(rank(j + 1)));
      inst.roles.push_back({RoleTag::Kind::ClauseSlack, static_cast<int>(j + 1), level});
    }
  }
  for (long i = 0; i < n; ++i) inst.target += Radical::term(rank(m + i + 1));
  for (long j = 0; j < m; ++j) inst.target += Radical::term(rank(j + 1), 3);
  inst.validate();
  return inst;
}

namespace {

SubsetSumInstance encode_cover_like(const Graph& g, int k, ProblemKind kind) {
  const long n = g.num_vertices;
  const long m = g.num_edges();
  check_k(k, 0, static_cast<int>(n), problem_name(kind));
  SubsetSumInstance inst;
  inst.source.kind = kind;
  inst.source.instance = g;
  inst.source.k = k;
  inst.source.cost_formula = "n+m";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = n + m;

  for (long i = 1; i <= n; ++i) {
    Radical w = Radical::term(rank(m + 1));
    for (long j = 0; j < m; ++j) {
      const auto& [u, v] = g.edges[static_cast<std::size_t>(j)];
      if (u == i || v == i) w += Radical::term(rank(j + 1));
    }
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::VertexPick, static_cast<int>(i), 0});
  }
  for (long j = 1; j <= m; ++j) {
    inst.weights.push_back(Radical::term(rank(j)));
    inst.roles.push_back({RoleTag::Kind::EdgeSlack, static_cast<int>(j), 0});
  }
  // Cover needs each edge radical twice, an independent set once.
  const int edge_coeff = kind == ProblemKind::VertexCover ? 2 : 1;
  inst.target = Radical::term(rank(m + 1), k);
  for (long j = 1; j <= m; ++j) inst.target += Radical::term(rank(j), edge_coeff);
  inst.validate();
  return inst;
}

} // namespace

SubsetSumInstance encode_vertex_cover(const Graph& g, int k) {
  return encode_cover_like(g, k, ProblemKind::VertexCover);
}

SubsetSumInstance encode_mis(const Graph& g, int k) {
  return encode_cover_like(g, k, ProblemKind::Mis);
}

SubsetSumInstance encode_clique(const Graph& g, int k) {
  const long n = g.num_vertices;
  const long m = g.num_edges();
  check_k(k, 0, static_cast<int>(n), "clique");
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::Clique;
  inst.source.instance = g;
  inst.source.k = k;
  inst.source.cost_formula = "n+m";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = n + m;

  for (long i = 1; i <= n; ++i) {
    Radical w = Radical::term(rank(n + 1));
    w += Radical::term(rank(i), k - 1);
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::VertexPick, static_cast<int>(i), 0});
  }
  for (const auto& [u, v] : g.edges) {
    Radical w = Radical::term(rank(n + 1), 2);
    w -= Radical::term(rank(u));
    w -= Radical::term(rank(v));
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::PairPick, u, v});
  }
  inst.target = Radical::term(rank(n + 1), BigInt(k) * k);
  inst.validate();
  return inst;
}

SubsetSumInstance encode_matching(const Graph& g, int k) {
  const long n = g.num_vertices;
  const long m = g.num_edges();
  check_k(k, 0, static_cast<int>(m), "matching");
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::Matching;
  inst.source.instance = g;
  inst.source.k = k;
  inst.source.cost_formula = "n+m";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = n + m;

  for (long i = 1; i <= n; ++i) {
    inst.weights.push_back(Radical::term(rank(i)));
    inst.roles.push_back({RoleTag::Kind::ElementUnit, static_cast<int>(i), 0});
  }
  for (const auto& [u, v] : g.edges) {
    Radical w = Radical::term(rank(n + 1));
    w += Radical::term(rank(u));
    w += Radical::term(rank(v));
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::EdgePick, u, v});
  }
  inst.target = Radical::term(rank(n + 1), k);
  for (long i = 1; i <= n; ++i) inst.target += Radical::term(rank(i));
  inst.validate();
  return inst;
}

SubsetSumInstance encode_exact_cover(const SetSystem& s) {
  const long m = s.universe_size;  // elements
  const long n = s.num_subsets();
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::ExactCover;
  inst.source.instance = s;
  inst.source.cost_formula = "n";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = n;

  for (long i = 0; i < n; ++i) {
    Radical w;
    for (int el : s.subsets[static_cast<std::size_t>(i)]) w += Radical::term(rank(el));
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::SubsetPick, static_cast<int>(i + 1), 0});
  }
  for (long j = 1; j <= m; ++j) inst.target += Radical::term(rank(j));
  inst.validate();
  return inst;
}

SubsetSumInstance encode_set_packing(const SetSystem& s, int k) {
  const long u = s.universe_size;
  const long m = s.num_subsets();
  check_k(k, 0, static_cast<int>(m), "set-packing");
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::SetPacking;
  inst.source.instance = s;
  inst.source.k = k;
  inst.source.cost_formula = "n+m";
  inst.source.n = u;
  inst.source.m = m;
  inst.source.expected_weights = u + m;

  for (long i = 1; i <= u; ++i) {
    inst.weights.push_back(Radical::term(rank(i)));
    inst.roles.push_back({RoleTag::Kind::ElementUnit, static_cast<int>(i), 0});
  }
  for (long i = 0; i < m; ++i) {
    Radical w = Radical::term(rank(u + 1));
    for (int el : s.subsets[static_cast<std::size_t>(i)]) w += Radical::term(rank(el));
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::SubsetPick, static_cast<int>(i + 1), 0});
  }
  inst.target = Radical::term(rank(u + 1), k);
  for (long i = 1; i <= u; ++i) inst.target += Radical::term(rank(i));
  inst.validate();
  return inst;
}

SubsetSumInstance encode_maxcut(const Graph& g, int k) {
  const long n = g.num_vertices;
  const long m = g.num_edges();
  check_k(k, 0, static_cast<int>(m), "maxcut");
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::Maxcut;
  inst.source.instance = g;
  inst.source.k = k;
  inst.source.cost_formula = "n+2m";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = n + 2 * m;

  for (long i = 1; i <= n; ++i) {
    Radical w;
    int deg = 0;
    for (long j = 0; j < m; ++j) {
      const auto& [a, b] = g.edges[static_cast<std::size_t>(j)];
      if (a == i || b == i) {
        w += Radical::term(rank(j + 1));
        ++deg;
      }
    }
    w += Radical::term(rank(m + 1), deg);
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::VertexPick, static_cast<int>(i), 0});
  }
  for (long j = 1; j <= m; ++j) {
    Radical w = Radical::term(rank(j), -2);
    w += Radical::term(rank(m + 1), -2);
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::CutBoth, static_cast<int>(j), 0});
  }
  for (long j = 1; j <= m; ++j) {
    inst.weights.push_back(Radical::term(rank(j), -1));
    inst.roles.push_back({RoleTag::Kind::CutOne, static_cast<int>(j), 0});
  }
  inst.target = Radical::term(rank(m + 1), k);
  inst.validate();
  return inst;
}

SubsetSumInstance encode_dominating_set(const Graph& g, int k) {
  const long n = g.num_vertices;
  const long m = g.num_edges();
  check_k(k, 0, static_cast<int>(n), "dominating-set");
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::DominatingSet;
  inst.source.instance = g;
  inst.source.k = k;
  inst.source.cost_formula = "n+4m";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = n + 4 * m;

  for (long i = 1; i <= n; ++i) {
    Radical w = Radical::term(rank(i));
    for (long j = 0; j < m; ++j) {
      const auto& [a, b] = g.edges[static_cast<std::size_t>(j)];
      if (a == i || b == i) w += Radical::term(rank(n + j + 1));
    }
    w += Radical::term(rank(n + m + 1));
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::VertexPick, static_cast<int>(i), 0});
  }
  for (long j = 1; j <= m; ++j) {
    inst.weights.push_back(Radical::term(rank(n + j), -2));
    inst.roles.push_back({RoleTag::Kind::DomEdgeBoth, static_cast<int>(j), 0});
  }
  for (long j = 0; j < m; ++j) {
    Radical w = Radical::term(rank(n + j + 1), -1);
    const auto& [a, b] = g.edges[static_cast<std::size_t>(j)];
    w += Radical::term(rank(a));
    w += Radical::term(rank(b));
    inst.weights.push_back(w);
    inst.roles.push_back({RoleTag::Kind::DomEdgeOne, static_cast<int>(j + 1), 0});
  }
  // One surplus weight per (vertex, level) with level in [1, degree(v_i)];
  // sum of degrees contributes the remaining 2m weights.
  for (long i = 1; i <= n; ++i) {
    int deg = g.degree(static_cast<int>(i));
    for (int level = 1; level <= deg; ++level) {
      inst.weights.push_back(Radical::term(rank(i), -level));
      inst.roles.push_back({RoleTag::Kind::DomSurplus, static_cast<int>(i), level});
    }
  }
  for (long i = 1; i <= n; ++i) inst.target += Radical::term(rank(i));
  inst.target += Radical::term(rank(n + m + 1), k);
  inst.validate();
  return inst;
}

SubsetSumInstance encode_3coloring(const Graph& g) {
  const long n = g.num_vertices;
  const long m = g.num_edges();
  SubsetSumInstance inst;
  inst.source.kind = ProblemKind::ThreeColoring;
  inst.source.instance = g;
  inst.source.cost_formula = "3(n+m)";
  inst.source.n = n;
  inst.source.m = m;
  inst.source.expected_weights = 3 * (n + m);

  // Edge j owns ranks n+3j-2, n+3j-1, n+3j for red, green, blue.
  auto color_rank = [&](long j, int color) { return rank(n + 3 * j - 2 + color); };
  for (long i = 1; i <= n; ++i) {
    for (int color = 0; color < 3; ++color) {
      Radical w = Radical::term(rank(i));
      for (long j = 0; j < m; ++j) {
        const auto& [a, b] = g.edges[static_cast<std::size_t>(j)];
        if (a == i || b == i) w += Radical::term(color_rank(j + 1, color));
      }
      inst.weights.push_back(w);
      inst.roles.push_back({RoleTag::Kind::ColorPick, static_cast<int>(i), color});
    }
  }
  for (long j = 1; j <= m; ++j) {
    for (int color = 0; color < 3; ++color) {
      inst.weights.push_back(Radical::term(color_rank(j, color)));
      inst.roles.push_back({RoleTag::Kind::EdgeColorSlack, static_cast<int>(j), color});
    }
  }
  for (long p = 1; p <= n + 3 * m; ++p) inst.target += Radical::term(rank(p));
  inst.validate();
  return inst;
}

SubsetSumInstance encode(ProblemKind kind, const SourceInstance& instance, int k) {
  switch (kind) {
    case ProblemKind::ThreeSat:
      return encode_3sat(std::get<CnfFormula>(instance));
    case ProblemKind::VertexCover:
      return encode_vertex_cover(std::get<Graph>(instance), k);
    case ProblemKind::Mis:
      return encode_mis(std::get<Graph>(instance), k);
    case ProblemKind::Clique:
      return encode_clique(std::get<Graph>(instance), k);
    case ProblemKind::Matching:
      return encode_matching(std::get<Graph>(instance), k);
    case ProblemKind::ExactCover:
      return encode_exact_cover(std::get<SetSystem>(instance));
    case ProblemKind::SetPacking:
      return encode_set_packing(std::get<SetSystem>(instance), k);
    case ProblemKind::Maxcut:
      return encode_maxcut(std::get<Graph>(instance), k);
    case ProblemKind::DominatingSet:
      return encode_dominating_set(std::get<Graph>(instance), k);
    case ProblemKind::ThreeColoring:
      return encode_3coloring(std::get<Graph>(instance));
  }
  throw InvariantError("encode: unknown problem kind");
}

// --- witness validity -----------------------------------------------------------

namespace {

bool is_subset_of_range(const std::vector<int>& xs, int hi) {
  std::set<int> seen;
  for (int x : xs) {
    if (x < 1 || x > hi) return false;
    if (!seen.insert(x).second) return false;
  }
  return true;
}

int cut_size(const Graph& g, const std::set<int>& side) {
  int cut = 0;
  for (const auto& [u, v] : g.edges)
    if (side.count(u) != side.count(v)) ++cut;
  return cut;
}

} // namespace

bool witness_valid(ProblemKind kind, const SourceInstance& instance, int k,
                   const NativeWitness& witness) {
  switch (kind) {
    case ProblemKind::ThreeSat: {
      const auto& f = std::get<CnfFormula>(instance);
      if (static_cast<int>(witness.size()) != f.num_vars) return false;
      return f.satisfies(witness);
    }
    case ProblemKind::VertexCover: {
      const auto& g = std::get<Graph>(instance);
      if (!is_subset_of_range(witness, g.num_vertices)) return false;
      if (static_cast<int>(witness.size()) != k) return false;
      std::set<int> cover(witness.begin(), witness.end());
      for (const auto& [u, v] : g.edges)
        if (!cover.count(u) && !cover.count(v)) return false;
      return true;
    }
    case ProblemKind::Mis: {
      const auto& g = std::get<Graph>(instance);
      if (!is_subset_of_range(witness, g.num_vertices)) return false;
      if (static_cast<int>(witness.size()) != k) return false;
      std::set<int> sel(witness.begin(), witness.end());
      for (const auto& [u, v] : g.edges)
        if (sel.count(u) && sel.count(v)) return false;
      return true;
    }
    case ProblemKind::Clique: {
      const auto& g = std::get<Graph>(instance);
      if (!is_subset_of_range(witness, g.num_vertices)) return false;
      if (static_cast<int>(witness.size()) != k) return false;
      for (std::size_t i = 0; i < witness.size(); ++i)
        for (std::size_t j = i + 1; j < witness.size(); ++j)
          if (!g.has_edge(witness[i], witness[j])) return false;
      return true;
    }
    case ProblemKind::Matching: {
      const auto& g = std::get<Graph>(instance);
      if (!is_subset_of_range(witness, g.num_edges())) return false;
      if (static_cast<int>(witness.size()) != k) return false;
      std::set<int> covered;
      for (int e : witness) {
        const auto& [u, v] = g.edges[static_cast<std::size_t>(e - 1)];
        if (!covered.insert(u).second) return false;
        if (!covered.insert(v).second) return false;
      }
      return true;
    }
    case ProblemKind::ExactCover: {
      const auto& s = std::get<SetSystem>(instance);
      if (!is_subset_of_range(witness, s.num_subsets())) return false;
      std::set<int> covered;
      for (int id : witness)
        for (int el : s.subsets[static_cast<std::size_t>(id - 1)])
          if (!covered.insert(el).second) return false;
      return static_cast<int>(covered.size()) == s.universe_size;
    }
    case ProblemKind::SetPacking: {
      const auto& s = std::get<SetSystem>(instance);
      if (!is_subset_of_range(witness, s.num_subsets())) return false;
      if (static_cast<int>(witness.size()) != k) return false;
      std::set<int> covered;
      for (int id : witness)
        for (int el : s.subsets[static_cast<std::size_t>(id - 1)])
          if (!covered.insert(el).second) return false;
      return true;
    }
    case ProblemKind::Maxcut: {
      const auto& g = std::get<Graph>(instance);
      if (!is_subset_of_range(witness, g.num_vertices)) return false;
      std::set<int> side(witness.begin(), witness.end());
      return cut_size(g, side) == k;
    }
    case ProblemKind::DominatingSet: {
      const auto& g = std::get<Graph>(instance);
      if (!is_subset_of_range(witness, g.num_vertices)) return false;
      if (static_cast<int>(witness.size()) != k) return false;
      std::set<int> dom(witness.begin(), witness.end());
      for (int v = 1; v <= g.num_vertices; ++v) {
        if (dom.count(v)) continue;
        bool adjacent = false;
        for (int d : dom)
          if (g.has_edge(v, d)) {
            adjacent = true;
            break;
          }
        if (!adjacent) return false;
      }
      return true;
    }
    case ProblemKind::ThreeColoring: {
      const auto& g = std::get<Graph>(instance);
      if (static_cast<int>(witness.size()) != g.num_vertices) return false;
      for (int c : witness)
        if (c < 0 || c > 2) return false;
      for (const auto& [u, v] : g.edges)
        if (witness[static_cast<std::size_t>(u - 1)] == witness[static_cast<std::size_t>(v - 1)])
          return false;
      return true;
    }
  }
  throw InvariantError("witness_valid: unknown problem kind");
}

// --- decode -----------------------------------------------------------------------

namespace {

class RoleIndex {
public:
  explicit RoleIndex(const SubsetSumInstance& inst) {
    for (std::size_t i = 0; i < inst.roles.size(); ++i) index_[key(inst.roles[i])] = i;
  }

  std::size_t at(RoleTag::Kind kind, int a, int b = 0) const {
    auto it = index_.find(key({kind, a, b}));
    if (it == index_.end()) throw InvariantError("role lookup failed: missing tag");
    return it->second;
  }

private:
  static std::tuple<int, int, int> key(const RoleTag& t) {
    return {static_cast<int>(t.kind), t.a, t.b};
  }
  std::map<std::tuple<int, int, int>, std::size_t> index_;
};

std::vector<int> picked(const SubsetSumInstance& inst, const std::vector<bool>& chosen,
                        RoleTag::Kind kind) {
  std::vector<int> out;
  for (std::size_t i = 0; i < inst.roles.size(); ++i)
    if (chosen[i] && inst.roles[i].kind == kind) out.push_back(inst.roles[i].a);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

DecodedSolution decode(const SubsetSumInstance& inst, const std::vector<bool>& chosen) {
  if (chosen.size() != inst.weights.size())
    throw PreconditionError("decode: selection length mismatch");
  if (inst.sum(chosen) != inst.target)
    throw PreconditionError("decode: selection does not sum to the target");

  const ProblemKind kind = inst.source.kind;
  DecodedSolution sol;
  sol.problem = problem_name(kind);
  NativeWitness witness;

  switch (kind) {
    case ProblemKind::ThreeSat: {
      const auto& f = std::get<CnfFormula>(inst.source.instance);
      RoleIndex idx(inst);
      witness.resize(static_cast<std::size_t>(f.num_vars));
      for (int i = 1; i <= f.num_vars; ++i) {
        bool t = chosen[idx.at(RoleTag::Kind::VarTrue, i)];
        bool ff = chosen[idx.at(RoleTag::Kind::VarFalse, i)];
        if (t == ff)
          throw InvariantError("decode 3sat: VarTrue/VarFalse pairing violated for variable " +
                               std::to_string(i));
        witness[static_cast<std::size_t>(i - 1)] = t ? 1 : 0;
      }
      sol.assignment = witness;
      sol.certificate = "all " + std::to_string(f.num_clauses()) + " clauses satisfied";
      break;
    }
    case ProblemKind::VertexCover:
    case ProblemKind::Mis:
    case ProblemKind::Clique:
    case ProblemKind::DominatingSet:
    case ProblemKind::Maxcut: {
      witness = picked(inst, chosen, RoleTag::Kind::VertexPick);
      sol.vertex_set = witness;
      const char* what = kind == ProblemKind::VertexCover  ? "every edge covered"
                         : kind == ProblemKind::Mis        ? "no picked pair adjacent"
                         : kind == ProblemKind::Clique     ? "picked vertices pairwise adjacent"
                         : kind == ProblemKind::Maxcut     ? "cut size equals k"
                                                           : "every vertex dominated";
      sol.certificate = std::to_string(witness.size()) + " vertices picked; " + what;
      break;
    }
    case ProblemKind::Matching: {
      const auto& g = std::get<Graph>(inst.source.instance);
      for (std::size_t i = 0; i < inst.roles.size(); ++i) {
        if (!chosen[i] || inst.roles[i].kind != RoleTag::Kind::EdgePick) continue;
        for (long j = 0; j < g.num_edges(); ++j) {
          const auto& [u, v] = g.edges[static_cast<std::size_t>(j)];
          if (u == inst.roles[i].a && v == inst.roles[i].b) {
            witness.push_back(static_cast<int>(j + 1));
            sol.edge_set.emplace_back(u, v);
            break;
          }
        }
      }
      std::sort(witness.begin(), witness.end());
      sol.certificate = std::to_string(witness.size()) + " edges picked; pairwise vertex-disjoint";
      break;
    }
    case ProblemKind::ExactCover:
    case ProblemKind::SetPacking: {
      witness = picked(inst, chosen, RoleTag::Kind::SubsetPick);
      sol.subset_ids = witness;
      sol.certificate = kind == ProblemKind::ExactCover
                            ? "every element covered exactly once"
                            : std::to_string(witness.size()) + " pairwise disjoint subsets";
      break;
    }
    case ProblemKind::ThreeColoring: {
      const auto& g = std::get<Graph>(inst.source.instance);
      witness.assign(static_cast<std::size_t>(g.num_vertices), -1);
      for (std::size_t i = 0; i < inst.roles.size(); ++i) {
        if (!chosen[i] || inst.roles[i].kind != RoleTag::Kind::ColorPick) continue;
        auto v = static_cast<std::size_t>(inst.roles[i].a - 1);
        if (witness[v] != -1)
          throw InvariantError("decode 3coloring: vertex " + std::to_string(inst.roles[i].a) +
                               " picked twice");
        witness[v] = inst.roles[i].b;
      }
      for (std::size_t v = 0; v < witness.size(); ++v)
        if (witness[v] == -1)
          throw InvariantError("decode 3coloring: vertex " + std::to_string(v + 1) + " uncolored");
      sol.coloring = witness;
      sol.certificate = "adjacent vertices colored differently";
      break;
    }
  }

  sol.valid = witness_valid(kind, inst.source.instance, inst.source.k, witness);
  if (!sol.valid)
    throw InvariantError("decode " + sol.problem +
                         ": exact-sum selection decoded to an invalid solution (encoder bug)");
  return sol;
}

// --- forward map --------------------------------------------------------------------

std::vector<bool> forward_map(const SubsetSumInstance& inst, const NativeWitness& witness) {
  const ProblemKind kind = inst.source.kind;
  if (!witness_valid(kind, inst.source.instance, inst.source.k, witness))
    throw PreconditionError("forward_map: witness is not a valid " + problem_name(kind) +
                            " solution");
  RoleIndex idx(inst);
  std::vector<bool> chosen(inst.weights.size(), false);

  switch (kind) {
    case ProblemKind::ThreeSat: {
      const auto& f = std::get<CnfFormula>(inst.source.instance);
      for (int i = 1; i <= f.num_vars; ++i) {
        bool value = witness[static_cast<std::size_t>(i - 1)] != 0;
        chosen[idx.at(value ? RoleTag::Kind::VarTrue : RoleTag::Kind::VarFalse, i)] = true;
      }
      for (int j = 1; j <= f.num_clauses(); ++j) {
        int satisfied = 0;
        for (auto [var, positive] : clause_incidences(f.clauses[static_cast<std::size_t>(j - 1)]))
          if ((witness[static_cast<std::size_t>(var - 1)] != 0) == positive) ++satisfied;
        // Clause radical needs total coefficient 3; the slack pair supplies 3 - satisfied.
        if (satisfied <= 1) chosen[idx.at(RoleTag::Kind::ClauseSlack, j, 2)] = true;
        if (satisfied <= 2) chosen[idx.at(RoleTag::Kind::ClauseSlack, j, 1)] = true;
      }
      break;
    }
    case ProblemKind::VertexCover: {
      const auto& g = std::get<Graph>(inst.source.instance);
      std::set<int> cover(witness.begin(), witness.end());
      for (int v : witness) chosen[idx.at(RoleTag::Kind::VertexPick, v)] = true;
      for (int j = 1; j <= g.num_edges(); ++j) {
        const auto& [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
        int ends = static_cast<int>(cover.count(u)) + static_cast<int>(cover.count(v));
        if (ends == 1) chosen[idx.at(RoleTag::Kind::EdgeSlack, j)] = true;
      }
      break;
    }
    case ProblemKind::Mis: {
      const auto& g = std::get<Graph>(inst.source.instance);
      std::set<int> sel(witness.begin(), witness.end());
      for (int v : witness) chosen[idx.at(RoleTag::Kind::VertexPick, v)] = true;
      for (int j = 1; j <= g.num_edges(); ++j) {
        const auto& [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
        if (!sel.count(u) && !sel.count(v)) chosen[idx.at(RoleTag::Kind::EdgeSlack, j)] = true;
      }
      break;
    }
    case ProblemKind::Clique: {
      for (int v : witness) chosen[idx.at(RoleTag::Kind::VertexPick, v)] = true;
      const auto& g = std::get<Graph>(inst.source.instance);
      std::set<int> sel(witness.begin(), witness.end());
      for (const auto& [u, v] : g.edges)
        if (sel.count(u) && sel.count(v)) chosen[idx.at(RoleTag::Kind::PairPick, u, v)] = true;
      break;
    }
    case ProblemKind::Matching: {
      const auto& g = std::get<Graph>(inst.source.instance);
      std::set<int> covered;
      for (int e : witness) {
        const auto& [u, v] = g.edges[static_cast<std::size_t>(e - 1)];
        chosen[idx.at(RoleTag::Kind::EdgePick, u, v)] = true;
        covered.insert(u);
        covered.insert(v);
      }
      for (int v = 1; v <= g.num_vertices; ++v)
        if (!covered.count(v)) chosen[idx.at(RoleTag::Kind::ElementUnit, v)] = true;
      break;
    }
    case ProblemKind::ExactCover: {
      for (int id : witness) chosen[idx.at(RoleTag::Kind::SubsetPick, id)] = true;
      break;
    }
    case ProblemKind::SetPacking: {
      const auto& s = std::get<SetSystem>(inst.source.instance);
      std::set<int> covered;
      for (int id : witness) {
        chosen[idx.at(RoleTag::Kind::SubsetPick, id)] = true;
        for (int el : s.subsets[static_cast<std::size_t>(id - 1)]) covered.insert(el);
      }
      for (int el = 1; el <= s.universe_size; ++el)
        if (!covered.count(el)) chosen[idx.at(RoleTag::Kind::ElementUnit, el)] = true;
      break;
    }
    case ProblemKind::Maxcut: {
      const auto& g = std::get<Graph>(inst.source.instance);
      std::set<int> side(witness.begin(), witness.end());
      for (int v : witness) chosen[idx.at(RoleTag::Kind::VertexPick, v)] = true;
      for (int j = 1; j <= g.num_edges(); ++j) {
        const auto& [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
        int ends = static_cast<int>(side.count(u)) + static_cast<int>(side.count(v));
        if (ends == 1) chosen[idx.at(RoleTag::Kind::CutOne, j)] = true;
        if (ends == 2) chosen[idx.at(RoleTag::Kind::CutBoth, j)] = true;
      }
      break;
    }
    case ProblemKind::DominatingSet: {
      const auto& g = std::get<Graph>(inst.source.instance);
      std::set<int> dom(witness.begin(), witness.end());
      for (int v : witness) chosen[idx.at(RoleTag::Kind::VertexPick, v)] = true;
      std::vector<int> vertex_coeff(static_cast<std::size_t>(g.num_vertices) + 1, 0);
      for (int v : witness) vertex_coeff[static_cast<std::size_t>(v)] += 1;
      for (int j = 1; j <= g.num_edges(); ++j) {
        const auto& [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
        int ends = static_cast<int>(dom.count(u)) + static_cast<int>(dom.count(v));
        if (ends == 2) chosen[idx.at(RoleTag::Kind::DomEdgeBoth, j)] = true;
        if (ends == 1) {
          chosen[idx.at(RoleTag::Kind::DomEdgeOne, j)] = true;
          vertex_coeff[static_cast<std::size_t>(u)] += 1;
          vertex_coeff[static_cast<std::size_t>(v)] += 1;
        }
      }
      for (int v = 1; v <= g.num_vertices; ++v) {
        int surplus = vertex_coeff[static_cast<std::size_t>(v)] - 1;
        if (surplus > 0) chosen[idx.at(RoleTag::Kind::DomSurplus, v, surplus)] = true;
      }
      break;
    }
    case ProblemKind::ThreeColoring: {
      const auto& g = std::get<Graph>(inst.source.instance);
      for (int v = 1; v <= g.num_vertices; ++v)
        chosen[idx.at(RoleTag::Kind::ColorPick, v, witness[static_cast<std::size_t>(v - 1)])] = true;
      for (int j = 1; j <= g.num_edges(); ++j) {
        const auto& [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
        int cu = witness[static_cast<std::size_t>(u - 1)];
        int cv = witness[static_cast<std::size_t>(v - 1)];
        chosen[idx.at(RoleTag::Kind::EdgeColorSlack, j, 3 - cu - cv)] = true;
      }
      break;
    }
  }

  if (inst.sum(chosen) != inst.target)
    throw InvariantError("forward_map " + problem_name(kind) +
                         ": constructed subset misses the target (encoder bug)");
  return chosen;
}

} // namespace cavity
