#include "cavity/instances.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cavity/errors.hpp"

namespace cavity {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool CnfFormula::satisfies(const std::vector<int>& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      int v = std::abs(lit);
      bool value = assignment[static_cast<std::size_t>(v) - 1] != 0;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool Graph::has_edge(int u, int v) const {
  for (const auto& [a, b] : edges) {
    if (a == u && b == v) return true;
    if (!directed && a == v && b == u) return true;
  }
  return false;
}

int Graph::degree(int v) const {
  int d = 0;
  for (const auto& [a, b] : edges)
    if (a == v || b == v) ++d;
  return d;
}

Rational QuboInstance::value(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != n)
    throw PreconditionError("qubo value: assignment length mismatch");
  Rational v = offset;
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    v += linear[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j)
      if (x[j]) v += 2 * quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return v;
}

QuboInstance make_qubo(int n, std::vector<std::vector<Rational>> quadratic,
                       std::vector<Rational> linear, Rational offset) {
  if (n < 1) throw FormatError("qubo: n must be >= 1");
  if (static_cast<int>(quadratic.size()) != n)
    throw FormatError("qubo: Q must be n x n");
  for (const auto& row : quadratic)
    if (static_cast<int>(row.size()) != n) throw FormatError("qubo: Q must be n x n");
  if (linear.empty()) linear.assign(static_cast<std::size_t>(n), Rational(0));
  if (static_cast<int>(linear.size()) != n)
    throw FormatError("qubo: linear vector length mismatch");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          quadratic[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw FormatError("qubo: Q must be symmetric");
    }
    // b_i^2 == b_i: diagonal acts linearly.
    linear[static_cast<std::size_t>(i)] += quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    quadratic[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  }
  QuboInstance q;
  q.n = n;
  q.quadratic = std::move(quadratic);
  q.linear = std::move(linear);
  q.offset = std::move(offset);
  return q;
}

// --- DIMACS CNF ---------------------------------------------------------------

CnfFormula parse_cnf(std::istream& in, bool pad_to_3sat) {
  CnfFormula f;
  int declared_clauses = -1;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok[0] == 'c') continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf")
        throw FormatError("cnf line " + std::to_string(line_no) + ": bad problem line");
      if (f.num_vars < 1)
        throw FormatError("cnf line " + std::to_string(line_no) + ": formula must have at least one variable");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw FormatError("cnf line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    ls.clear();
    ls.seekg(0);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (pad_to_3sat) {
          // Duplicating a literal preserves satisfiability.
          while (pending.size() >= 1 && pending.size() < 3) pending.push_back(pending.back());
        }
        if (pending.size() != 3)
          throw FormatError("cnf: clause " + std::to_string(f.clauses.size() + 1) + " has arity " +
                            std::to_string(pending.size()) + ", expected exactly 3");
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        int v = std::abs(lit);
        if (v > f.num_vars)
          throw FormatError("cnf: clause " + std::to_string(f.clauses.size() + 1) + ": variable " +
                            std::to_string(v) + " out of range [1," + std::to_string(f.num_vars) + "]");
        pending.push_back(lit);
      }
    }
  }
  if (!have_header) throw FormatError("cnf: missing 'p cnf' header");
  if (!pending.empty()) throw FormatError("cnf: last clause not terminated by 0");
  if (declared_clauses >= 0 && declared_clauses != f.num_clauses())
    throw FormatError("cnf: header declares " + std::to_string(declared_clauses) + " clauses, found " +
                      std::to_string(f.num_clauses()));
  return f;
}

CnfFormula parse_cnf(const std::string& text, bool pad_to_3sat) {
  std::istringstream in(text);
  return parse_cnf(in, pad_to_3sat);
}

std::string serialize_cnf(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) os << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return os.str();
}

// --- graphs --------------------------------------------------------------------

namespace {

void check_edge(const Graph& g, int u, int v, const std::string& where) {
  if (u < 1 || u > g.num_vertices || v < 1 || v > g.num_vertices)
    throw FormatError(where + ": endpoint out of range [1," + std::to_string(g.num_vertices) + "]");
  if (u == v) throw FormatError(where + ": self-loop " + std::to_string(u));
}

void check_duplicates(const Graph& g) {
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : g.edges) {
    auto key = (g.directed || u < v) ? std::make_pair(u, v) : std::make_pair(v, u);
    if (!seen.insert(key).second)
      throw FormatError("graph: duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
}

Graph parse_graph_dimacs(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0, declared_edges = -1;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> g.num_vertices >> declared_edges) || (fmt != "edge" && fmt != "col"))
        throw FormatError("graph line " + std::to_string(line_no) + ": bad problem line");
      if (g.num_vertices < 1)
        throw FormatError("graph line " + std::to_string(line_no) + ": need at least one vertex");
      have_header = true;
      continue;
    }
    if (tok == "e") {
      if (!have_header)
        throw FormatError("graph line " + std::to_string(line_no) + ": edge before header");
      int u, v;
      if (!(ls >> u >> v))
        throw FormatError("graph line " + std::to_string(line_no) + ": bad edge line");
      check_edge(g, u, v, "graph line " + std::to_string(line_no));
      g.edges.emplace_back(u, v);
      std::string w;
      if (ls >> w) {
        g.weights.resize(g.edges.size() - 1, Rational(0));
        g.weights.push_back(rational_from_string(w));
      } else if (!g.weights.empty()) {
        throw FormatError("graph line " + std::to_string(line_no) + ": missing weight");
      }
      continue;
    }
    throw FormatError("graph line " + std::to_string(line_no) + ": unknown record '" + tok + "'");
  }
  if (!have_header) throw FormatError("graph: missing 'p edge' header");
  if (declared_edges >= 0 && declared_edges != g.num_edges())
    throw FormatError("graph: header declares " + std::to_string(declared_edges) + " edges, found " +
                      std::to_string(g.num_edges()));
  check_duplicates(g);
  return g;
}

Graph parse_graph_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("graph json: ") + e.what());
  }
  Graph g;
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw FormatError("graph json at /n: expected integer vertex count");
  g.num_vertices = j["n"].get<int>();
  if (g.num_vertices < 1) throw FormatError("graph json at /n: need at least one vertex");
  g.directed = j.value("directed", false);
  if (!j.contains("edges") || !j["edges"].is_array())
    throw FormatError("graph json at /edges: expected array");
  std::size_t idx = 0;
  for (const auto& e : j["edges"]) {
    std::string where = "graph json at /edges/" + std::to_string(idx);
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw FormatError(where + ": expected [u,v]");
    int u = e[0].get<int>(), v = e[1].get<int>();
    check_edge(g, u, v, where);
    g.edges.emplace_back(u, v);
    ++idx;
  }
  if (j.contains("weights")) {
    if (!j["weights"].is_array() || j["weights"].size() != g.edges.size())
      throw FormatError("graph json at /weights: expected one weight per edge");
    idx = 0;
    for (const auto& w : j["weights"]) {
      if (w.is_string())
        g.weights.push_back(rational_from_string(w.get<std::string>()));
      else if (w.is_number_integer())
        g.weights.push_back(Rational(w.get<long>()));
      else
        throw FormatError("graph json at /weights/" + std::to_string(idx) + ": expected integer or \"p/q\"");
      ++idx;
    }
  }
  check_duplicates(g);
  return g;
}

} // namespace

Graph parse_graph(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? parse_graph_json(text) : parse_graph_dimacs(text);
  }
  throw FormatError("graph: empty input");
}

std::string serialize_graph(const Graph& g) {
  if (!g.directed && !g.weighted()) {
    std::ostringstream os;
    os << "p edge " << g.num_vertices << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) os << "e " << u << ' ' << v << '\n';
    return os.str();
  }
  ordered_json j;
  j["schema"] = "cavity/v1/graph";
  j["n"] = g.num_vertices;
  j["directed"] = g.directed;
  j["edges"] = json::array();
  for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
  if (g.weighted()) {
    j["weights"] = json::array();
    for (const auto& w : g.weights) j["weights"].push_back(rational_to_string(w));
  }
  return j.dump();
}

// --- JSON instances -------------------------------------------------------------

namespace {

json parse_json_or_throw(const std::string& text, const std::string& kind) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(kind + " json: " + e.what());
  }
}

void check_schema(const json& j, const std::string& kind) {
  if (j.contains("schema")) {
    std::string s = j["schema"].get<std::string>();
    if (s != "cavity/v1/" + kind)
      throw FormatError(kind + " json at /schema: expected cavity/v1/" + kind + ", got " + s);
  }
}

long get_long(const json& j, const std::string& path) {
  const json* node = &j;
  try {
    node = &j.at(json::json_pointer(path));
  } catch (const json::exception&) {
    throw FormatError("json at " + path + ": missing field");
  }
  if (!node->is_number_integer()) throw FormatError("json at " + path + ": expected integer");
  return node->get<long>();
}

std::vector<long> get_long_array(const json& j, const std::string& path, long min_value) {
  const json* node;
  try {
    node = &j.at(json::json_pointer(path));
  } catch (const json::exception&) {
    throw FormatError("json at " + path + ": missing field");
  }
  if (!node->is_array()) throw FormatError("json at " + path + ": expected array");
  std::vector<long> out;
  std::size_t i = 0;
  for (const auto& v : *node) {
    if (!v.is_number_integer())
      throw FormatError("json at " + path + "/" + std::to_string(i) + ": expected integer");
    long value = v.get<long>();
    if (value < min_value)
      throw FormatError("json at " + path + "/" + std::to_string(i) + ": must be >= " +
                        std::to_string(min_value));
    out.push_back(value);
    ++i;
  }
  return out;
}

Rational rational_from_json(const json& v, const std::string& path) {
  if (v.is_string()) return rational_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw FormatError("json at " + path + ": expected integer or \"p/q\" string");
}

} // namespace

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw FormatError("bad rational '" + s + "'");
  if (r.get_den() == 0) throw FormatError("bad rational '" + s + "': zero denominator");
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

SetSystem parse_set_system(const std::string& text) {
  json j = parse_json_or_throw(text, "set-system");
  check_schema(j, "set-system");
  SetSystem s;
  s.universe_size = static_cast<int>(get_long(j, "/universe"));
  if (s.universe_size < 0) throw FormatError("json at /universe: must be >= 0");
  if (!j.contains("subsets") || !j["subsets"].is_array())
    throw FormatError("json at /subsets: expected array");
  std::size_t i = 0;
  for (const auto& sub : j["subsets"]) {
    std::string path = "/subsets/" + std::to_string(i);
    if (!sub.is_array()) throw FormatError("json at " + path + ": expected array");
    std::vector<int> elems;
    std::size_t k = 0;
    for (const auto& e : sub) {
      if (!e.is_number_integer())
        throw FormatError("json at " + path + "/" + std::to_string(k) + ": expected integer");
      int el = e.get<int>();
      if (el < 1 || el > s.universe_size)
        throw FormatError("json at " + path + "/" + std::to_string(k) + ": element out of range [1," +
                          std::to_string(s.universe_size) + "]");
      elems.push_back(el);
      ++k;
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.subsets.push_back(std::move(elems));
    ++i;
  }
  return s;
}

std::string serialize_set_system(const SetSystem& s) {
  ordered_json j;
  j["schema"] = "cavity/v1/set-system";
  j["universe"] = s.universe_size;
  j["subsets"] = json::array();
  for (const auto& sub : s.subsets) j["subsets"].push_back(sub);
  return j.dump();
}

KnapsackInstance parse_knapsack(const std::string& text) {
  json j = parse_json_or_throw(text, "knapsack");
  check_schema(j, "knapsack");
  KnapsackInstance k;
  k.weights = get_long_array(j, "/weights", 1);
  k.values = get_long_array(j, "/values", 1);
  k.capacity = get_long(j, "/capacity");
  if (k.values.size() != k.weights.size())
    throw FormatError("json at /values: length must match /weights");
  if (k.capacity < 1) throw FormatError("json at /capacity: must be >= 1");
  return k;
}

std::string serialize_knapsack(const KnapsackInstance& k) {
  ordered_json j;
  j["schema"] = "cavity/v1/knapsack";
  j["weights"] = k.weights;
  j["values"] = k.values;
  j["capacity"] = k.capacity;
  return j.dump();
}

BilpInstance parse_bilp(const std::string& text) {
  json j = parse_json_or_throw(text, "bilp");
  check_schema(j, "bilp");
  BilpInstance b;
  if (!j.contains("A") || !j["A"].is_array() || j["A"].empty())
    throw FormatError("json at /A: expected non-empty matrix");
  std::size_t i = 0;
  std::size_t cols = 0;
  for (const auto& row : j["A"]) {
    std::string path = "/A/" + std::to_string(i);
    if (!row.is_array()) throw FormatError("json at " + path + ": expected array");
    std::vector<long> r;
    std::size_t kk = 0;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw FormatError("json at " + path + "/" + std::to_string(kk) + ": expected integer");
      r.push_back(v.get<long>());
      ++kk;
    }
    if (i == 0)
      cols = r.size();
    else if (r.size() != cols)
      throw FormatError("json at " + path + ": ragged matrix");
    b.A.push_back(std::move(r));
    ++i;
  }
  if (cols == 0) throw FormatError("json at /A/0: matrix needs at least one column");
  b.b = get_long_array(j, "/b", std::numeric_limits<long>::min());
  b.c = get_long_array(j, "/c", std::numeric_limits<long>::min());
  if (b.b.size() != b.A.size()) throw FormatError("json at /b: length must match row count of A");
  if (b.c.size() != cols) throw FormatError("json at /c: length must match column count of A");
  return b;
}

std::string serialize_bilp(const BilpInstance& b) {
  ordered_json j;
  j["schema"] = "cavity/v1/bilp";
  j["A"] = b.A;
  j["b"] = b.b;
  j["c"] = b.c;
  return j.dump();
}

JobSequencingInstance parse_jobseq(const std::string& text) {
  json j = parse_json_or_throw(text, "jobseq");
  check_schema(j, "jobseq");
  JobSequencingInstance inst;
  inst.durations = get_long_array(j, "/durations", 1);
  inst.machines = static_cast<int>(get_long(j, "/machines"));
  inst.deadline = get_long(j, "/deadline");
  if (inst.durations.empty()) throw FormatError("json at /durations: need at least one job");
  if (inst.machines < 1) throw FormatError("json at /machines: must be >= 1");
  long tmax = *std::max_element(inst.durations.begin(), inst.durations.end());
  if (inst.deadline < tmax)
    throw FormatError("json at /deadline: " + std::to_string(inst.deadline) +
                      " is below the longest duration " + std::to_string(tmax) +
                      "; instance is trivially infeasible");
  return inst;
}

std::string serialize_jobseq(const JobSequencingInstance& inst) {
  ordered_json j;
  j["schema"] = "cavity/v1/jobseq";
  j["durations"] = inst.durations;
  j["machines"] = inst.machines;
  j["deadline"] = inst.deadline;
  return j.dump();
}

QuboInstance parse_qubo(const std::string& text) {
  json j = parse_json_or_throw(text, "qubo");
  check_schema(j, "qubo");
  int n = static_cast<int>(get_long(j, "/n"));
  if (n < 1) throw FormatError("json at /n: must be >= 1");
  if (!j.contains("Q") || !j["Q"].is_array()) throw FormatError("json at /Q: expected matrix");
  std::vector<std::vector<Rational>> Q;
  std::size_t i = 0;
  for (const auto& row : j["Q"]) {
    std::string path = "/Q/" + std::to_string(i);
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      throw FormatError("json at " + path + ": expected row of length " + std::to_string(n));
    std::vector<Rational> r;
    std::size_t kk = 0;
    for (const auto& v : row) {
      r.push_back(rational_from_json(v, path + "/" + std::to_string(kk)));
      ++kk;
    }
    Q.push_back(std::move(r));
    ++i;
  }
  if (Q.size() != static_cast<std::size_t>(n)) throw FormatError("json at /Q: expected n rows");
  std::vector<Rational> linear;
  if (j.contains("linear")) {
    if (!j["linear"].is_array() || j["linear"].size() != static_cast<std::size_t>(n))
      throw FormatError("json at /linear: expected array of length n");
    std::size_t kk = 0;
    for (const auto& v : j["linear"]) {
      linear.push_back(rational_from_json(v, "/linear/" + std::to_string(kk)));
      ++kk;
    }
  }
  Rational offset = 0;
  if (j.contains("offset")) offset = rational_from_json(j["offset"], "/offset");
  try {
    return make_qubo(n, std::move(Q), std::move(linear), std::move(offset));
  } catch (const FormatError& e) {
    throw FormatError(std::string("qubo json: ") + e.what());
  }
}

std::string serialize_qubo(const QuboInstance& q) {
  ordered_json j;
  j["schema"] = "cavity/v1/qubo";
  j["n"] = q.n;
  j["Q"] = json::array();
  for (const auto& row : q.quadratic) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational_to_string(v));
    j["Q"].push_back(r);
  }
  j["linear"] = json::array();
  for (const auto& v : q.linear) j["linear"].push_back(rational_to_string(v));
  j["offset"] = rational_to_string(q.offset);
  return j.dump();
}

} // namespace cavity
