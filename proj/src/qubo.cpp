#include "cavity/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cavity/errors.hpp"
#include "cavity/reductions.hpp"

namespace cavity {

Rational IsingModel::energy(const std::vector<int>& spins) const {
  if (static_cast<int>(spins.size()) != n)
    throw PreconditionError("ising energy: spin vector length mismatch");
  Rational e = offset;
  for (int i = 0; i < n; ++i) {
    e -= fields[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j)
      e -= couplings[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
           (spins[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(j)]);
  }
  return e;
}

IsingModel qubo_to_ising(const QuboInstance& q) {
  IsingModel m;
  m.n = q.n;
  m.couplings.assign(static_cast<std::size_t>(q.n),
                     std::vector<Rational>(static_cast<std::size_t>(q.n), Rational(0)));
  m.fields.assign(static_cast<std::size_t>(q.n), Rational(0));
  m.offset = q.offset;
  // x = (1+s)/2 termwise: x_i x_j -> (1 + s_i + s_j + s_i s_j)/4, x_i -> (1+s_i)/2.
  for (int i = 0; i < q.n; ++i) {
    Rational row_sum = 0;
    for (int j = 0; j < q.n; ++j) {
      if (j == i) continue;
      const Rational& qij = q.quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      row_sum += qij;
      if (j > i) {
        m.couplings[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -qij / 2;
        m.couplings[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -qij / 2;
        m.offset += qij / 2;
      }
    }
    m.fields[static_cast<std::size_t>(i)] = -(row_sum + q.linear[static_cast<std::size_t>(i)]) / 2;
    m.offset += q.linear[static_cast<std::size_t>(i)] / 2;
  }
  return m;
}

Rational ParityProgram::branch_energy(const std::vector<int>& z, bool plus_branch) const {
  if (z.size() != pairs.size())
    throw PreconditionError("parity branch energy: z length mismatch");
  Rational e = plus_branch ? constant_plus : constant_minus;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Rational c = coupling_costs[k];
    if (plus_branch)
      c += field_costs[k];
    else
      c -= field_costs[k];
    e += c * z[k];
  }
  return e;
}

ParityProgram parity_transform(const IsingModel& m) {
  ParityProgram p;
  p.spin_count = m.n;
  std::map<std::pair<int, int>, int> index;
  for (int i = 1; i <= m.n; ++i)
    for (int j = i + 1; j <= m.n; ++j) {
      index[{i, j}] = p.num_parity_vars();
      p.pairs.emplace_back(i, j);
    }
  p.coupling_costs.assign(p.pairs.size(), Rational(0));
  p.field_costs.assign(p.pairs.size(), Rational(0));
  for (std::size_t k = 0; k < p.pairs.size(); ++k) {
    auto [i, j] = p.pairs[k];
    p.coupling_costs[k] =
        -m.couplings[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  }
  // Fields ride on z_{1j} under the s_1 = +1 gauge; h_1 becomes a constant.
  for (int j = 2; j <= m.n; ++j)
    p.field_costs[static_cast<std::size_t>(index[{1, j}])] = -m.fields[static_cast<std::size_t>(j - 1)];
  Rational h1 = m.n >= 1 ? m.fields[0] : Rational(0);
  p.constant_plus = m.offset - h1;
  p.constant_minus = m.offset + h1;

  // Plaquette (i, i') over pairs (i,i'), (i,i'+1), (i+1,i'+1), (i+1,i'); the
  // last collapses to the identity when i' == i+1.
  for (int i = 1; i <= m.n - 1; ++i) {
    for (int ip = i + 1; ip <= m.n - 1; ++ip) {
      Plaquette pl{};
      pl.slots[0] = index.at({i, ip});
      pl.slots[1] = index.at({i, ip + 1});
      pl.slots[2] = index.at({i + 1, ip + 1});
      pl.slots[3] = ip == i + 1 ? -1 : index.at({i + 1, ip});
      p.plaquettes.push_back(pl);
    }
  }
  return p;
}

CnfFormula plaquette_to_3sat(const ParityProgram& p) {
  CnfFormula f;
  const int parity_vars = p.num_parity_vars();
  f.num_vars = parity_vars + static_cast<int>(p.plaquettes.size());
  for (std::size_t pl = 0; pl < p.plaquettes.size(); ++pl) {
    const auto& slots = p.plaquettes[pl].slots;
    const int beta = parity_vars + static_cast<int>(pl) + 1;
    const int A = slots[0] + 1;
    const int B = slots[1] + 1;
    const int C = slots[2] + 1;
    if (slots[3] >= 0) {
      const int D = slots[3] + 1;
      f.clauses.push_back({beta, A, B});
      f.clauses.push_back({beta, -A, -B});
      f.clauses.push_back({beta, C, D});
      f.clauses.push_back({beta, -C, -D});
      f.clauses.push_back({-beta, -A, B});
      f.clauses.push_back({-beta, A, -B});
      f.clauses.push_back({-beta, -C, D});
      f.clauses.push_back({-beta, C, -D});
    } else {
      // Identity slot holds a constant true bit: the D-clauses degenerate to
      // forcing C = (A == B); duplicated to keep the eight-clause shape.
      f.clauses.push_back({beta, A, B});
      f.clauses.push_back({beta, -A, -B});
      f.clauses.push_back({beta, -C, -C});
      f.clauses.push_back({beta, -C, -C});
      f.clauses.push_back({-beta, -A, B});
      f.clauses.push_back({-beta, A, -B});
      f.clauses.push_back({-beta, C, C});
      f.clauses.push_back({-beta, C, C});
    }
  }
  return f;
}

Rational PenalizedObjective::linear_value(const std::vector<bool>& y, bool plus_branch) const {
  const auto& costs = plus_branch ? linear_costs : linear_costs_alt;
  Rational v = plus_branch ? constant : constant_alt;
  for (std::size_t k = 0; k < costs.size(); ++k)
    if (y[k]) v += costs[k];
  return v;
}

PenalizedObjective qubo_compile(const QuboInstance& q) {
  if (q.n < 2) throw PreconditionError("qubo compile: need at least two variables");
  PenalizedObjective out;
  out.ising = qubo_to_ising(q);
  out.parity = parity_transform(out.ising);
  out.parity_cnf = plaquette_to_3sat(out.parity);
  out.constraint = encode_3sat(out.parity_cnf);
  out.parity_var_count = out.parity.num_parity_vars();

  // Branch energies as functions of the parity selectors y (z = 2y - 1).
  const std::size_t K = static_cast<std::size_t>(out.parity_var_count);
  out.linear_costs.assign(K, Rational(0));
  out.linear_costs_alt.assign(K, Rational(0));
  out.constant = out.parity.constant_plus;
  out.constant_alt = out.parity.constant_minus;
  for (std::size_t k = 0; k < K; ++k) {
    Rational plus = out.parity.coupling_costs[k] + out.parity.field_costs[k];
    Rational minus = out.parity.coupling_costs[k] - out.parity.field_costs[k];
    out.linear_costs[k] = 2 * plus;
    out.linear_costs_alt[k] = 2 * minus;
    out.constant -= plus;
    out.constant_alt -= minus;
  }

  out.delta = 1;
  for (std::size_t k = 0; k < K; ++k)
    out.delta += std::max(abs(out.linear_costs[k]), abs(out.linear_costs_alt[k]));
  return out;
}

PipelineMinimum pipeline_minimize(const PenalizedObjective& p) {
  const int n = p.parity.spin_count;
  if (n < 1 || n > 20) throw SizeCapError("pipeline_minimize: spin count out of range");
  PipelineMinimum best;
  bool have = false;
  std::vector<int> spins(static_cast<std::size_t>(n), 1);
  // Every valid parity configuration is the image of a spin vector with
  // s_1 = +1; scan them all and try both global branches.
  for (std::uint64_t bits = 0; bits < (1ULL << (n - 1)); ++bits) {
    for (int j = 2; j <= n; ++j)
      spins[static_cast<std::size_t>(j - 1)] = (bits >> (j - 2)) & 1 ? 1 : -1;
    std::vector<int> z(p.parity.pairs.size());
    for (std::size_t k = 0; k < p.parity.pairs.size(); ++k) {
      auto [i, j] = p.parity.pairs[k];
      z[k] = spins[static_cast<std::size_t>(i - 1)] * spins[static_cast<std::size_t>(j - 1)];
    }
    for (bool plus : {true, false}) {
      Rational value = p.parity.branch_energy(z, plus);
      if (!have || value < best.value) {
        have = true;
        best.value = value;
        best.z = z;
        best.plus_branch = plus;
        best.x.assign(static_cast<std::size_t>(n), 0);
        for (int i = 1; i <= n; ++i) {
          int s = spins[static_cast<std::size_t>(i - 1)] * (plus ? 1 : -1);
          best.x[static_cast<std::size_t>(i - 1)] = s > 0 ? 1 : 0;
        }
      }
    }
  }
  return best;
}

// --- formulations ------------------------------------------------------------------

namespace {

/// Accumulates sums of scaled squares and linear terms, folding x_i^2 = x_i.
class QuboBuilder {
public:
  explicit QuboBuilder(int n)
      : n_(n),
        quadratic_(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))),
        linear_(static_cast<std::size_t>(n), Rational(0)) {}

  void add_constant(const Rational& c) { offset_ += c; }
  void add_linear(int i, const Rational& c) { linear_[static_cast<std::size_t>(i)] += c; }

  void add_product(int i, int j, const Rational& c) {
    if (i == j) {
      add_linear(i, c);
      return;
    }
    quadratic_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += c / 2;
    quadratic_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += c / 2;
  }

  /// scale * (constant + sum coeff_i x_i)^2
  void add_square(const std::vector<std::pair<int, Rational>>& terms, const Rational& constant,
                  const Rational& scale = 1) {
    add_constant(scale * constant * constant);
    for (const auto& [i, ci] : terms) add_linear(i, scale * 2 * constant * ci);
    for (std::size_t a = 0; a < terms.size(); ++a)
      for (std::size_t b = a; b < terms.size(); ++b) {
        Rational c = scale * terms[a].second * terms[b].second;
        if (a != b) c *= 2;
        add_product(terms[a].first, terms[b].first, c);
      }
  }

  QuboInstance build() { return make_qubo(n_, quadratic_, linear_, offset_); }

private:
  int n_;
  std::vector<std::vector<Rational>> quadratic_;
  std::vector<Rational> linear_;
  Rational offset_ = 0;
};

} // namespace

std::string formulation_name(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::Bilp: return "bilp";
    case FormulationKind::Knapsack: return "knapsack";
    case FormulationKind::JobSequencing: return "jobseq";
    case FormulationKind::HamiltonianCycle: return "hamcycle";
    case FormulationKind::Tsp: return "tsp";
  }
  throw InvariantError("unknown formulation kind");
}

FormulationKind formulation_from_name(const std::string& name) {
  if (name == "bilp") return FormulationKind::Bilp;
  if (name == "knapsack") return FormulationKind::Knapsack;
  if (name == "jobseq") return FormulationKind::JobSequencing;
  if (name == "hamcycle") return FormulationKind::HamiltonianCycle;
  if (name == "tsp") return FormulationKind::Tsp;
  throw FormatError("unknown formulation kind '" + name + "'");
}

QuboFormulation bilp_to_qubo(const BilpInstance& b) {
  const int m = b.num_rows();
  const int n = b.num_cols();
  for (int i = 0; i < n; ++i) {
    bool nonzero = false;
    for (int j = 0; j < m; ++j)
      if (b.A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != 0) nonzero = true;
    if (!nonzero)
      throw PreconditionError("bilp: column " + std::to_string(i + 1) +
                              " of A is all-zero; its constraint penalty is void");
  }
  QuboFormulation f;
  f.kind = FormulationKind::Bilp;
  f.source = b;
  // alpha/beta above max|c| / min_i sum_j A_ji^2 keeps any single flip off a
  // feasible optimum unprofitable.
  Rational min_col(0);
  bool first = true;
  for (int i = 0; i < n; ++i) {
    Rational col = 0;
    for (int j = 0; j < m; ++j) {
      long a = b.A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      col += Rational(a) * a;
    }
    if (first || col < min_col) min_col = col;
    first = false;
  }
  long cmax = 0;
  for (long c : b.c) cmax = std::max(cmax, std::abs(c));
  f.beta = 1;
  f.alpha = Rational(1) + Rational(cmax) / min_col;

  QuboBuilder builder(n);
  for (int j = 0; j < m; ++j) {
    std::vector<std::pair<int, Rational>> row;
    for (int i = 0; i < n; ++i) {
      long a = b.A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (a != 0) row.emplace_back(i, Rational(-a));
    }
    builder.add_square(row, Rational(b.b[static_cast<std::size_t>(j)]), f.alpha);
  }
  for (int i = 0; i < n; ++i)
    builder.add_linear(i, -f.beta * b.c[static_cast<std::size_t>(i)]);
  f.qubo = builder.build();
  for (int i = 1; i <= n; ++i) f.variable_names.push_back("x" + std::to_string(i));
  return f;
}

QuboFormulation knapsack_to_qubo(const KnapsackInstance& k) {
  const int n = k.num_items();
  const int W = static_cast<int>(k.capacity);
  QuboFormulation f;
  f.kind = FormulationKind::Knapsack;
  f.source = k;
  long vmax = *std::max_element(k.values.begin(), k.values.end());
  // Strictly inside the Delta <= 1/max(v) bound to avoid degenerate ties.
  f.delta = Rational(1, vmax + 1);

  QuboBuilder builder(n + W);
  // (1 - sum_k y_k)^2
  std::vector<std::pair<int, Rational>> ys;
  for (int kk = 1; kk <= W; ++kk) ys.emplace_back(n + kk - 1, Rational(-1));
  builder.add_square(ys, 1);
  // (sum_k k y_k - sum_i w_i x_i)^2
  std::vector<std::pair<int, Rational>> balance;
  for (int kk = 1; kk <= W; ++kk) balance.emplace_back(n + kk - 1, Rational(kk));
  for (int i = 0; i < n; ++i) balance.emplace_back(i, Rational(-k.weights[static_cast<std::size_t>(i)]));
  builder.add_square(balance, 0);
  // -Delta sum v_i x_i
  for (int i = 0; i < n; ++i)
    builder.add_linear(i, -f.delta * k.values[static_cast<std::size_t>(i)]);
  f.qubo = builder.build();
  for (int i = 1; i <= n; ++i) f.variable_names.push_back("x" + std::to_string(i));
  for (int kk = 1; kk <= W; ++kk) f.variable_names.push_back("y" + std::to_string(kk));
  return f;
}

QuboFormulation jobseq_to_qubo(const JobSequencingInstance& j) {
  const int n = j.num_jobs();
  const int m = j.machines;
  const int T0 = static_cast<int>(j.deadline);
  QuboFormulation f;
  f.kind = FormulationKind::JobSequencing;
  f.source = j;

  auto xvar = [&](int job, int machine) { return job * m + machine; };          // 0-based
  auto yvar = [&](int kk, int machine) { return n * m + kk * m + machine; };    // kk 0-based time-1

  QuboBuilder builder(m * (n + T0));
  for (int job = 0; job < n; ++job) {
    std::vector<std::pair<int, Rational>> terms;
    for (int mc = 0; mc < m; ++mc) terms.emplace_back(xvar(job, mc), Rational(-1));
    builder.add_square(terms, 1);
  }
  for (int mc = 0; mc < m; ++mc) {
    std::vector<std::pair<int, Rational>> ys;
    for (int kk = 0; kk < T0; ++kk) ys.emplace_back(yvar(kk, mc), Rational(-1));
    builder.add_square(ys, 1);
    std::vector<std::pair<int, Rational>> balance;
    for (int kk = 0; kk < T0; ++kk) balance.emplace_back(yvar(kk, mc), Rational(kk + 1));
    for (int job = 0; job < n; ++job)
      balance.emplace_back(xvar(job, mc), Rational(-j.durations[static_cast<std::size_t>(job)]));
    builder.add_square(balance, 0);
  }
  f.qubo = builder.build();
  for (int job = 1; job <= n; ++job)
    for (int mc = 1; mc <= m; ++mc)
      f.variable_names.push_back("x" + std::to_string(job) + "," + std::to_string(mc));
  for (int kk = 1; kk <= T0; ++kk)
    for (int mc = 1; mc <= m; ++mc)
      f.variable_names.push_back("y" + std::to_string(kk) + "," + std::to_string(mc));
  return f;
}

namespace {

// Ordered arc set; undirected edges are expanded to both directions.
std::set<std::pair<int, int>> arc_set(const Graph& g) {
  std::set<std::pair<int, int>> arcs;
  for (const auto& [u, v] : g.edges) {
    arcs.insert({u, v});
    if (!g.directed) arcs.insert({v, u});
  }
  return arcs;
}

} // namespace

QuboFormulation hamcycle_to_qubo(const Graph& g) {
  const int n = g.num_vertices;
  if (n < 2) throw PreconditionError("hamcycle: need at least two vertices");
  QuboFormulation f;
  f.kind = FormulationKind::HamiltonianCycle;
  f.source = g;
  auto arcs = arc_set(g);
  auto var = [&](int v, int pos) { return (v - 1) * n + (pos % n); };  // pos 0-based, wraps

  QuboBuilder builder(n * n);
  for (int v = 1; v <= n; ++v) {
    std::vector<std::pair<int, Rational>> terms;
    for (int pos = 0; pos < n; ++pos) terms.emplace_back(var(v, pos), Rational(-1));
    builder.add_square(terms, 1);
  }
  for (int pos = 0; pos < n; ++pos) {
    std::vector<std::pair<int, Rational>> terms;
    for (int v = 1; v <= n; ++v) terms.emplace_back(var(v, pos), Rational(-1));
    builder.add_square(terms, 1);
  }
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) {
      if (u == v || arcs.count({u, v})) continue;
      for (int pos = 0; pos < n; ++pos)
        builder.add_product(var(u, pos), var(v, pos + 1), Rational(1));
    }
  f.qubo = builder.build();
  for (int v = 1; v <= n; ++v)
    for (int pos = 1; pos <= n; ++pos)
      f.variable_names.push_back("x" + std::to_string(v) + "," + std::to_string(pos));
  return f;
}

QuboFormulation tsp_to_qubo(const Graph& g) {
  const int n = g.num_vertices;
  if (n < 2) throw PreconditionError("tsp: need at least two vertices");
  if (g.directed) throw PreconditionError("tsp: expected an undirected complete graph");
  if (!g.weighted()) throw PreconditionError("tsp: edge weights required");
  std::map<std::pair<int, int>, Rational> weight;
  Rational wmax = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& [u, v] = g.edges[e];
    const Rational& w = g.weights[e];
    if (w <= 0) throw PreconditionError("tsp: weights must be positive");
    weight[{u, v}] = w;
    weight[{v, u}] = w;
    wmax = std::max(wmax, w);
  }
  if (static_cast<long>(g.edges.size()) != static_cast<long>(n) * (n - 1) / 2)
    throw PreconditionError("tsp: the graph must be complete");

  QuboFormulation f;
  f.kind = FormulationKind::Tsp;
  f.source = g;
  // Strictly below the 1/max(W) bound.
  f.delta = Rational(1) / (wmax + 1);

  auto var = [&](int v, int pos) { return (v - 1) * n + (pos % n); };
  QuboBuilder builder(n * n);
  for (int v = 1; v <= n; ++v) {
    std::vector<std::pair<int, Rational>> terms;
    for (int pos = 0; pos < n; ++pos) terms.emplace_back(var(v, pos), Rational(-1));
    builder.add_square(terms, 1);
  }
  for (int pos = 0; pos < n; ++pos) {
    std::vector<std::pair<int, Rational>> terms;
    for (int v = 1; v <= n; ++v) terms.emplace_back(var(v, pos), Rational(-1));
    builder.add_square(terms, 1);
  }
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      for (int pos = 0; pos < n; ++pos)
        builder.add_product(var(u, pos), var(v, pos + 1), f.delta * weight.at({u, v}));
    }
  f.qubo = builder.build();
  for (int v = 1; v <= n; ++v)
    for (int pos = 1; pos <= n; ++pos)
      f.variable_names.push_back("x" + std::to_string(v) + "," + std::to_string(pos));
  return f;
}

// --- decoding ---------------------------------------------------------------------

namespace {

QuboDecoded decode_tour(const Graph& g, const std::vector<int>& x, bool weighted) {
  const int n = g.num_vertices;
  QuboDecoded d;
  d.problem = weighted ? "tsp" : "hamcycle";
  auto var = [&](int v, int pos) {
    return static_cast<std::size_t>((v - 1) * n + (pos % n));
  };
  std::vector<int> at(static_cast<std::size_t>(n), 0);
  for (int pos = 0; pos < n; ++pos) {
    int count = 0, vertex = 0;
    for (int v = 1; v <= n; ++v)
      if (x[var(v, pos)]) {
        ++count;
        vertex = v;
      }
    if (count != 1) {
      d.certificate = "position " + std::to_string(pos + 1) + " holds " + std::to_string(count) +
                      " vertices";
      return d;
    }
    at[static_cast<std::size_t>(pos)] = vertex;
  }
  for (int v = 1; v <= n; ++v) {
    int count = 0;
    for (int pos = 0; pos < n; ++pos)
      if (x[var(v, pos)]) ++count;
    if (count != 1) {
      d.certificate = "vertex " + std::to_string(v) + " appears " + std::to_string(count) + " times";
      return d;
    }
  }
  auto arcs = arc_set(g);
  std::map<std::pair<int, int>, Rational> weight;
  if (weighted)
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      weight[{g.edges[e].first, g.edges[e].second}] = g.weights[e];
      weight[{g.edges[e].second, g.edges[e].first}] = g.weights[e];
    }
  Rational total = 0;
  for (int pos = 0; pos < n; ++pos) {
    int u = at[static_cast<std::size_t>(pos)];
    int v = at[static_cast<std::size_t>((pos + 1) % n)];
    if (!arcs.count({u, v})) {
      d.certificate = "consecutive pair (" + std::to_string(u) + "," + std::to_string(v) +
                      ") is not an arc";
      return d;
    }
    if (weighted) total += weight.at({u, v});
  }
  d.constraints_satisfied = true;
  d.tour = at;
  d.objective = total;
  d.certificate = weighted ? "valid tour of weight " + rational_to_string(total) : "valid cycle";
  return d;
}

} // namespace

QuboDecoded qubo_decode(const QuboFormulation& f, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != f.qubo.n)
    throw PreconditionError("qubo decode: assignment length mismatch");
  switch (f.kind) {
    case FormulationKind::Bilp: {
      const auto& b = std::get<BilpInstance>(f.source);
      QuboDecoded d;
      d.problem = "bilp";
      d.x = x;
      d.constraints_satisfied = true;
      for (int j = 0; j < b.num_rows(); ++j) {
        long lhs = 0;
        for (int i = 0; i < b.num_cols(); ++i)
          lhs += b.A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        if (lhs != b.b[static_cast<std::size_t>(j)]) {
          d.constraints_satisfied = false;
          d.certificate = "constraint row " + std::to_string(j + 1) + " violated";
          return d;
        }
      }
      long obj = 0;
      for (int i = 0; i < b.num_cols(); ++i)
        obj += b.c[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      d.objective = obj;
      d.certificate = "Ax = b holds; objective " + std::to_string(obj);
      return d;
    }
    case FormulationKind::Knapsack: {
      const auto& k = std::get<KnapsackInstance>(f.source);
      QuboDecoded d;
      d.problem = "knapsack";
      long weight = 0, value = 0;
      for (int i = 0; i < k.num_items(); ++i)
        if (x[static_cast<std::size_t>(i)]) {
          d.items.push_back(i + 1);
          weight += k.weights[static_cast<std::size_t>(i)];
          value += k.values[static_cast<std::size_t>(i)];
        }
      int picked = 0;
      long indicated = 0;
      for (long kk = 1; kk <= k.capacity; ++kk)
        if (x[static_cast<std::size_t>(k.num_items() + kk - 1)]) {
          ++picked;
          indicated = kk;
        }
      if (picked != 1 || indicated != weight) {
        d.certificate = "weight indicator inconsistent with item load";
        return d;
      }
      if (weight > k.capacity) {
        d.certificate = "capacity exceeded";
        return d;
      }
      d.constraints_satisfied = true;
      d.objective = value;
      d.certificate = "weight " + std::to_string(weight) + " of " + std::to_string(k.capacity) +
                      ", value " + std::to_string(value);
      return d;
    }
    case FormulationKind::JobSequencing: {
      const auto& j = std::get<JobSequencingInstance>(f.source);
      const int n = j.num_jobs(), m = j.machines;
      QuboDecoded d;
      d.problem = "jobseq";
      d.machine_of_job.assign(static_cast<std::size_t>(n), 0);
      for (int job = 0; job < n; ++job) {
        int count = 0, chosen = 0;
        for (int mc = 0; mc < m; ++mc)
          if (x[static_cast<std::size_t>(job * m + mc)]) {
            ++count;
            chosen = mc + 1;
          }
        if (count != 1) {
          d.certificate = "job " + std::to_string(job + 1) + " assigned to " +
                          std::to_string(count) + " machines";
          return d;
        }
        d.machine_of_job[static_cast<std::size_t>(job)] = chosen;
      }
      long makespan = 0;
      for (int mc = 1; mc <= m; ++mc) {
        long load = 0;
        for (int job = 0; job < n; ++job)
          if (d.machine_of_job[static_cast<std::size_t>(job)] == mc)
            load += j.durations[static_cast<std::size_t>(job)];
        if (load > j.deadline) {
          d.certificate = "machine " + std::to_string(mc) + " load " + std::to_string(load) +
                          " exceeds deadline " + std::to_string(j.deadline);
          return d;
        }
        makespan = std::max(makespan, load);
      }
      d.constraints_satisfied = true;
      d.objective = makespan;
      d.certificate = "all machines within deadline; makespan " + std::to_string(makespan);
      return d;
    }
    case FormulationKind::HamiltonianCycle:
      return decode_tour(std::get<Graph>(f.source), x, false);
    case FormulationKind::Tsp:
      return decode_tour(std::get<Graph>(f.source), x, true);
  }
  throw InvariantError("qubo decode: unknown formulation kind");
}

// --- exhaustive QUBO minimizer ------------------------------------------------------

QuboMinimum qubo_brute_force_min(const QuboInstance& q, unsigned cap_bits) {
  if (q.n < 1 || static_cast<unsigned>(q.n) > cap_bits)
    throw SizeCapError("qubo brute force: dimension beyond 2^" + std::to_string(cap_bits) + " cap");

  // Scale everything to int64 so the Gray walk stays exact.
  BigInt lcm = 1;
  auto fold = [&](const Rational& r) { mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t()); };
  fold(q.offset);
  for (const auto& r : q.linear) fold(r);
  for (const auto& row : q.quadratic)
    for (const auto& r : row) fold(r);
  auto scaled = [&](const Rational& r) {
    Rational s = r * Rational(lcm);
    return s.get_num();
  };
  BigInt bound = abs(scaled(q.offset));
  std::vector<long long> lin(static_cast<std::size_t>(q.n));
  std::vector<std::vector<long long>> quad(static_cast<std::size_t>(q.n),
                                           std::vector<long long>(static_cast<std::size_t>(q.n), 0));
  for (int i = 0; i < q.n; ++i) {
    BigInt v = scaled(q.linear[static_cast<std::size_t>(i)]);
    bound += abs(v);
    lin[static_cast<std::size_t>(i)] = v.get_si();
    for (int j = 0; j < q.n; ++j) {
      BigInt w = scaled(q.quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      bound += 2 * abs(w);
      quad[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w.get_si();
    }
  }
  if (mpz_sizeinbase(bound.get_mpz_t(), 2) > 62)
    throw SizeCapError("qubo brute force: coefficients exceed the 62-bit fast path");
  const long long off = scaled(q.offset).get_si();

  const int n = q.n;
  const std::uint64_t total = 1ULL << n;
  struct ChunkBest {
    long long value = 0;
    std::uint64_t index = 0;  // walk position of the first minimizer
    std::uint64_t mask = 0;
    bool have = false;
  };

  int chunks = 1;
#ifdef _OPENMP
  if (n >= 18) chunks = std::max(1, omp_get_max_threads());
#endif
  const auto nchunks = static_cast<std::uint64_t>(chunks);
  std::vector<ChunkBest> best(nchunks);

#pragma omp parallel for schedule(static, 1)
  for (int c = 0; c < chunks; ++c) {
    const std::uint64_t begin = total / nchunks * static_cast<std::uint64_t>(c);
    const std::uint64_t end =
        (c + 1 == chunks) ? total : total / nchunks * (static_cast<std::uint64_t>(c) + 1);
    std::uint64_t mask = begin ^ (begin >> 1);
    std::vector<long long> row(static_cast<std::size_t>(n), 0);  // row[i] = sum_j quad[i][j] x_j
    long long value = off;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1ULL << i))) continue;
      value += lin[static_cast<std::size_t>(i)] + 2 * row[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] += quad[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    ChunkBest local;
    for (std::uint64_t i = begin; i < end; ++i) {
      if (i != begin) {
        const int bit = std::countr_zero(i);
        const std::uint64_t flip = 1ULL << bit;
        const bool adding = !(mask & flip);
        if (adding) {
          value += lin[static_cast<std::size_t>(bit)] + 2 * row[static_cast<std::size_t>(bit)];
          for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] += quad[static_cast<std::size_t>(j)][static_cast<std::size_t>(bit)];
        } else {
          for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] -= quad[static_cast<std::size_t>(j)][static_cast<std::size_t>(bit)];
          value -= lin[static_cast<std::size_t>(bit)] + 2 * row[static_cast<std::size_t>(bit)];
        }
        mask ^= flip;
      }
      if (!local.have || value < local.value) {
        local.have = true;
        local.value = value;
        local.index = i;
        local.mask = mask;
      }
    }
    best[static_cast<std::size_t>(c)] = local;
  }

  ChunkBest overall;
  for (const auto& b : best) {
    if (!b.have) continue;
    if (!overall.have || b.value < overall.value ||
        (b.value == overall.value && b.index < overall.index))
      overall = b;
  }
  QuboMinimum out;
  out.x.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) out.x[static_cast<std::size_t>(i)] = (overall.mask >> i) & 1;
  out.value = q.value(out.x);
  return out;
}

} // namespace cavity
