#include "cavity/brute_force.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "cavity/errors.hpp"

namespace cavity {

namespace {

// All size-k subsets of {1..n} in lexicographic order.
void for_each_subset_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(pick.size()) == k) {
      fn(pick);
      return;
    }
    for (int v = next; v <= n - (k - static_cast<int>(pick.size())) + 1; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(1);
}

} // namespace

NativeResult oracle_original(ProblemKind kind, const SourceInstance& instance, int k,
                             bool all_witnesses) {
  NativeResult result;
  auto consider = [&](const NativeWitness& w) {
    if (result.feasible && !all_witnesses) return;
    if (witness_valid(kind, instance, k, w)) {
      result.feasible = true;
      result.witnesses.push_back(w);
    }
  };

  switch (kind) {
    case ProblemKind::ThreeSat: {
      const auto& f = std::get<CnfFormula>(instance);
      if (f.num_vars > 20) throw SizeCapError("oracle_original: too many variables");
      for (std::uint64_t bits = 0; bits < (1ULL << f.num_vars); ++bits) {
        NativeWitness w(static_cast<std::size_t>(f.num_vars));
        for (int i = 0; i < f.num_vars; ++i) w[static_cast<std::size_t>(i)] = (bits >> i) & 1;
        consider(w);
        if (result.feasible && !all_witnesses) break;
      }
      break;
    }
    case ProblemKind::VertexCover:
    case ProblemKind::Mis:
    case ProblemKind::Clique:
    case ProblemKind::DominatingSet: {
      const auto& g = std::get<Graph>(instance);
      if (g.num_vertices > 10) throw SizeCapError("oracle_original: too many vertices");
      for_each_subset_of_size(g.num_vertices, k, consider);
      break;
    }
    case ProblemKind::Maxcut: {
      const auto& g = std::get<Graph>(instance);
      if (g.num_vertices > 10) throw SizeCapError("oracle_original: too many vertices");
      // Every side-U choice; complements give the same cut, both reported.
      for (std::uint64_t bits = 0; bits < (1ULL << g.num_vertices); ++bits) {
        NativeWitness w;
        for (int v = 1; v <= g.num_vertices; ++v)
          if ((bits >> (v - 1)) & 1) w.push_back(v);
        consider(w);
        if (result.feasible && !all_witnesses) break;
      }
      break;
    }
    case ProblemKind::Matching: {
      const auto& g = std::get<Graph>(instance);
      if (g.num_edges() > 20) throw SizeCapError("oracle_original: too many edges");
      for_each_subset_of_size(g.num_edges(), k, consider);
      break;
    }
    case ProblemKind::ExactCover: {
      const auto& s = std::get<SetSystem>(instance);
      if (s.num_subsets() > 20) throw SizeCapError("oracle_original: too many subsets");
      for (std::uint64_t bits = 0; bits < (1ULL << s.num_subsets()); ++bits) {
        NativeWitness w;
        for (int i = 1; i <= s.num_subsets(); ++i)
          if ((bits >> (i - 1)) & 1) w.push_back(i);
        consider(w);
        if (result.feasible && !all_witnesses) break;
      }
      break;
    }
    case ProblemKind::SetPacking: {
      const auto& s = std::get<SetSystem>(instance);
      if (s.num_subsets() > 20) throw SizeCapError("oracle_original: too many subsets");
      for_each_subset_of_size(s.num_subsets(), k, consider);
      break;
    }
    case ProblemKind::ThreeColoring: {
      const auto& g = std::get<Graph>(instance);
      if (g.num_vertices > 10) throw SizeCapError("oracle_original: too many vertices");
      std::uint64_t total = 1;
      for (int i = 0; i < g.num_vertices; ++i) total *= 3;
      for (std::uint64_t code = 0; code < total; ++code) {
        NativeWitness w(static_cast<std::size_t>(g.num_vertices));
        std::uint64_t c = code;
        for (int i = 0; i < g.num_vertices; ++i) {
          w[static_cast<std::size_t>(i)] = static_cast<int>(c % 3);
          c /= 3;
        }
        consider(w);
        if (result.feasible && !all_witnesses) break;
      }
      break;
    }
  }
  return result;
}

} // namespace cavity
