#pragma once

#include <cstdint>
#include <vector>

#include "cavity/mattis.hpp"

namespace cavity {

struct AnnealOptions {
  int sweeps = 2000;
  std::uint64_t seed = 1;
  // Geometric temperature schedule; zeros mean the defaults T0 = max single
  // flip energy change, T1 = 1e-3 * T0.
  double t_start = 0.0;
  double t_end = 0.0;
};

struct AnnealResult {
  std::vector<int> best;        // binary assignment
  double best_energy = 0.0;     // re-evaluated from scratch on the way out
  std::vector<double> trace;    // best-so-far energy after each sweep
  std::uint64_t seed = 0;
  int sweeps = 0;
};

/// Metropolis single-spin-flip on the program energy; deterministic given the
/// seed.  Incremental O(1) flip evaluation via the magnetization.
AnnealResult anneal(const MattisProgram& program, const AnnealOptions& opt = {});

} // namespace cavity
