#include "cavity/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cavity/errors.hpp"

namespace cavity {

AnnealResult anneal(const MattisProgram& program, const AnnealOptions& opt) {
  if (opt.sweeps < 1) throw PreconditionError("anneal: need at least one sweep");
  const int n = program.atoms();
  if (n < 1) throw PreconditionError("anneal: empty program");

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<int> spins(static_cast<std::size_t>(n));  // +-1
  for (auto& s : spins) s = rng() & 1 ? 1 : -1;

  double magnet = 0.0, field = 0.0;
  for (int i = 0; i < n; ++i) {
    magnet += program.lambda[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
    field += program.h[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
  }
  auto current_energy = [&] {
    return program.offset + program.g4 * (field + 0.25 * magnet * magnet);
  };
  // Energy change of flipping spin i given the current magnetization.
  auto flip_delta = [&](int i) {
    const double s = spins[static_cast<std::size_t>(i)];
    const double dm = -2.0 * program.lambda[static_cast<std::size_t>(i)] * s;
    const double dh = -2.0 * program.h[static_cast<std::size_t>(i)] * s;
    return program.g4 * (dh + 0.25 * ((magnet + dm) * (magnet + dm) - magnet * magnet));
  };

  double t_start = opt.t_start;
  if (t_start <= 0.0) {
    double sum_abs_lambda = 0.0;
    for (double l : program.lambda) sum_abs_lambda += std::abs(l);
    for (int i = 0; i < n; ++i) {
      const double l = std::abs(program.lambda[static_cast<std::size_t>(i)]);
      const double bound =
          program.g4 * (2.0 * std::abs(program.h[static_cast<std::size_t>(i)]) + l * (sum_abs_lambda + l));
      t_start = std::max(t_start, bound);
    }
    if (t_start <= 0.0) t_start = 1.0;
  }
  double t_end = opt.t_end > 0.0 ? opt.t_end : 1e-3 * t_start;
  const double cooling =
      opt.sweeps > 1 ? std::pow(t_end / t_start, 1.0 / (opt.sweeps - 1)) : 1.0;

  AnnealResult result;
  result.seed = opt.seed;
  result.sweeps = opt.sweeps;
  std::vector<int> best = spins;
  double best_energy = current_energy();

  double temperature = t_start;
  for (int sweep = 0; sweep < opt.sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      const double delta = flip_delta(i);
      if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) {
        const double s = spins[static_cast<std::size_t>(i)];
        magnet -= 2.0 * program.lambda[static_cast<std::size_t>(i)] * s;
        field -= 2.0 * program.h[static_cast<std::size_t>(i)] * s;
        spins[static_cast<std::size_t>(i)] = -spins[static_cast<std::size_t>(i)];
      }
    }
    const double e = current_energy();
    if (e < best_energy) {
      best_energy = e;
      best = spins;
    }
    result.trace.push_back(best_energy);
    temperature *= cooling;
  }

  result.best.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    result.best[static_cast<std::size_t>(i)] = best[static_cast<std::size_t>(i)] > 0 ? 1 : 0;
  result.best_energy = program.energy(result.best);
  return result;
}

} // namespace cavity
