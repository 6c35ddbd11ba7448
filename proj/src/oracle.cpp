#include "cavity/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cavity/errors.hpp"

namespace cavity {

namespace {

// Dense integer projection of an instance onto the union of its ranks.  The
// per-rank magnitude bound is checked up front so the int64 walk cannot
// overflow; coefficients are otherwise arbitrary-precision.
struct DenseInstance {
  std::vector<SquarefreeRank> ranks;                       // sorted union
  std::vector<std::vector<std::pair<int, long long>>> weights;  // (rank slot, delta)
  std::vector<long long> target;

  explicit DenseInstance(const SubsetSumInstance& inst) {
    std::map<SquarefreeRank, BigInt> magnitude;
    for (const auto& w : inst.weights)
      for (const auto& [p, c] : w.terms()) magnitude[p] += abs(c);
    for (const auto& [p, c] : inst.target.terms()) magnitude[p] += abs(c);
    for (const auto& [p, total] : magnitude) {
      if (mpz_sizeinbase(total.get_mpz_t(), 2) > 62)
        throw SizeCapError("oracle: coefficient magnitudes exceed the 62-bit fast path");
      ranks.push_back(p);
    }
    std::map<SquarefreeRank, int> slot;
    for (std::size_t i = 0; i < ranks.size(); ++i) slot[ranks[i]] = static_cast<int>(i);
    target.assign(ranks.size(), 0);
    for (const auto& [p, c] : inst.target.terms()) target[static_cast<std::size_t>(slot[p])] = c.get_si();
    weights.reserve(inst.weights.size());
    for (const auto& w : inst.weights) {
      std::vector<std::pair<int, long long>> entries;
      for (const auto& [p, c] : w.terms()) entries.emplace_back(slot[p], c.get_si());
      weights.push_back(std::move(entries));
    }
  }

  std::size_t num_ranks() const { return ranks.size(); }
};

std::vector<bool> mask_to_selection(std::uint64_t mask, std::size_t k) {
  std::vector<bool> sel(k, false);
  for (std::size_t i = 0; i < k; ++i)
    if (mask & (1ULL << i)) sel[i] = true;
  return sel;
}

struct ChunkHit {
  std::uint64_t walk_index;
  std::uint64_t mask;
};

// Walk subsets gray(i) for i in [begin, end); in first-only mode the walk
// stops at its first hit.  Returns hits in walk order plus visited count.
std::pair<std::vector<ChunkHit>, std::uint64_t> walk_range(const DenseInstance& dense,
                                                           std::uint64_t begin, std::uint64_t end,
                                                           bool all_witnesses, bool allow_empty) {
  std::vector<ChunkHit> hits;
  const std::size_t nr = dense.num_ranks();
  std::vector<long long> cur(nr, 0);
  std::uint64_t mask = begin ^ (begin >> 1);
  for (std::size_t i = 0; i < dense.weights.size(); ++i) {
    if (!(mask & (1ULL << i))) continue;
    for (auto [slot, d] : dense.weights[i]) cur[static_cast<std::size_t>(slot)] += d;
  }
  long mismatches = 0;
  for (std::size_t r = 0; r < nr; ++r)
    if (cur[r] != dense.target[r]) ++mismatches;

  std::uint64_t visited = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    if (i != begin) {
      const int bit = std::countr_zero(i);
      const std::uint64_t flip = 1ULL << bit;
      mask ^= flip;
      const bool added = (mask & flip) != 0;
      for (auto [slot, d] : dense.weights[static_cast<std::size_t>(bit)]) {
        auto s = static_cast<std::size_t>(slot);
        const bool was = cur[s] != dense.target[s];
        cur[s] += added ? d : -d;
        const bool is = cur[s] != dense.target[s];
        mismatches += static_cast<long>(is) - static_cast<long>(was);
      }
    }
    ++visited;
    if (mismatches == 0 && (mask != 0 || allow_empty)) {
      hits.push_back({i, mask});
      if (!all_witnesses) break;
    }
  }
  return {std::move(hits), visited};
}

OracleResult finish(const SubsetSumInstance& inst, std::vector<ChunkHit> hits,
                    std::uint64_t explored, bool all_witnesses) {
  std::sort(hits.begin(), hits.end(),
            [](const ChunkHit& a, const ChunkHit& b) { return a.walk_index < b.walk_index; });
  if (!all_witnesses && hits.size() > 1) hits.resize(1);
  OracleResult result;
  result.explored = explored;
  result.feasible = !hits.empty();
  for (const auto& h : hits) {
    auto sel = mask_to_selection(h.mask, inst.size());
    if (inst.sum(sel) != inst.target)
      throw InvariantError("oracle: enumeration bookkeeping produced a false witness");
    result.witnesses.push_back(std::move(sel));
  }
  return result;
}

void check_cap(const SubsetSumInstance& inst, unsigned cap_bits) {
  if (inst.size() > cap_bits)
    throw SizeCapError("oracle: instance has " + std::to_string(inst.size()) +
                       " weights, beyond the 2^" + std::to_string(cap_bits) + " enumeration cap");
}

} // namespace

OracleResult oracle_subset_sum_serial(const SubsetSumInstance& inst, const OracleOptions& opt) {
  check_cap(inst, opt.cap_bits);
  DenseInstance dense(inst);
  const std::uint64_t total = 1ULL << inst.size();
  auto [hits, visited] = walk_range(dense, 0, total, opt.all_witnesses, opt.allow_empty);
  return finish(inst, std::move(hits), visited, opt.all_witnesses);
}

OracleResult oracle_subset_sum(const SubsetSumInstance& inst, const OracleOptions& opt) {
  check_cap(inst, opt.cap_bits);
  if (!opt.parallel || inst.size() < 16) return oracle_subset_sum_serial(inst, opt);
  DenseInstance dense(inst);
  const std::uint64_t total = 1ULL << inst.size();

  int chunks = 1;
#ifdef _OPENMP
  chunks = std::max(1, omp_get_max_threads());
#endif
  const auto nchunks = static_cast<std::uint64_t>(chunks);
  std::vector<std::vector<ChunkHit>> chunk_hits(nchunks);
  std::vector<std::uint64_t> chunk_visited(nchunks, 0);

#pragma omp parallel for schedule(static, 1)
  for (int c = 0; c < chunks; ++c) {
    const std::uint64_t begin = total / nchunks * static_cast<std::uint64_t>(c);
    const std::uint64_t end =
        (c + 1 == chunks) ? total : total / nchunks * (static_cast<std::uint64_t>(c) + 1);
    auto [hits, visited] =
        walk_range(dense, begin, end, opt.all_witnesses, opt.allow_empty);
    chunk_hits[static_cast<std::size_t>(c)] = std::move(hits);
    chunk_visited[static_cast<std::size_t>(c)] = visited;
  }

  std::vector<ChunkHit> hits;
  std::uint64_t explored = 0;
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    hits.insert(hits.end(), chunk_hits[c].begin(), chunk_hits[c].end());
    explored += chunk_visited[c];
  }
  return finish(inst, std::move(hits), explored, opt.all_witnesses);
}

namespace {

struct DfsState {
  const DenseInstance& dense;
  const SubsetSumInstance& inst;
  const OracleOptions& opt;
  // suffix_lo[k][r] / suffix_hi[k][r]: attainable range of the total of
  // weights k..K-1 at rank slot r.
  std::vector<std::vector<long long>> suffix_lo, suffix_hi;
  std::vector<long long> cur;
  std::vector<bool> chosen;
  std::vector<std::vector<bool>> found;
  std::uint64_t nodes = 0;
  bool done = false;

  DfsState(const DenseInstance& d, const SubsetSumInstance& i, const OracleOptions& o)
      : dense(d), inst(i), opt(o) {
    const std::size_t K = dense.weights.size();
    const std::size_t R = dense.num_ranks();
    suffix_lo.assign(K + 1, std::vector<long long>(R, 0));
    suffix_hi.assign(K + 1, std::vector<long long>(R, 0));
    for (std::size_t k = K; k-- > 0;) {
      suffix_lo[k] = suffix_lo[k + 1];
      suffix_hi[k] = suffix_hi[k + 1];
      for (auto [slot, d2] : dense.weights[k]) {
        auto s = static_cast<std::size_t>(slot);
        if (d2 < 0)
          suffix_lo[k][s] += d2;
        else
          suffix_hi[k][s] += d2;
      }
    }
    cur.assign(R, 0);
    chosen.assign(K, false);
  }

  bool viable(std::size_t k) const {
    for (std::size_t r = 0; r < dense.num_ranks(); ++r) {
      if (cur[r] + suffix_lo[k][r] > dense.target[r]) return false;
      if (cur[r] + suffix_hi[k][r] < dense.target[r]) return false;
    }
    return true;
  }

  void run(std::size_t k) {
    if (done) return;
    ++nodes;
    if (!viable(k)) return;
    if (k == dense.weights.size()) {
      // viable() at the leaf pins every rank to the target exactly.
      bool empty = std::find(chosen.begin(), chosen.end(), true) == chosen.end();
      if (empty && !opt.allow_empty) return;
      found.push_back(chosen);
      if (!opt.all_witnesses) done = true;
      return;
    }
    run(k + 1);
    if (done) return;
    chosen[k] = true;
    for (auto [slot, d] : dense.weights[k]) cur[static_cast<std::size_t>(slot)] += d;
    run(k + 1);
    chosen[k] = false;
    for (auto [slot, d] : dense.weights[k]) cur[static_cast<std::size_t>(slot)] -= d;
  }
};

} // namespace

OracleResult oracle_subset_sum_dfs(const SubsetSumInstance& inst, const OracleOptions& opt) {
  if (inst.size() >= 63)
    throw SizeCapError("oracle dfs: instance too large");
  DenseInstance dense(inst);
  DfsState state(dense, inst, opt);
  state.run(0);
  OracleResult result;
  result.explored = state.nodes;
  result.feasible = !state.found.empty();
  for (auto& sel : state.found) {
    if (inst.sum(sel) != inst.target)
      throw InvariantError("oracle dfs: search produced a false witness");
    result.witnesses.push_back(std::move(sel));
  }
  return result;
}

OracleResult oracle_subset_sum_auto(const SubsetSumInstance& inst, const OracleOptions& opt) {
  if (inst.size() <= opt.cap_bits) return oracle_subset_sum(inst, opt);
  return oracle_subset_sum_dfs(inst, opt);
}

} // namespace cavity
