#include "cavity/adiabatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

#include "cavity/errors.hpp"

namespace cavity {

AdiabaticResult adiabatic_simulate(const MattisProgram& program, const RampSchedule& schedule,
                                   double total_time, int steps) {
  const int n = program.atoms();
  if (n < 1 || n > 12) throw SizeCapError("adiabatic: atom count must be in [1, 12]");
  if (steps < 100) throw PreconditionError("adiabatic: need at least 100 steps");
  if (total_time < 0) throw PreconditionError("adiabatic: negative evolution time");

  const std::size_t dim = 1ULL << n;
  using cd = std::complex<double>;

  // Problem diagonal in the sigma-x eigenbasis (offset dropped: global phase).
  std::vector<double> diag(dim);
  std::vector<int> x(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double field = 0.0, magnet = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = (idx >> i) & 1 ? 1.0 : -1.0;
      field += program.h[static_cast<std::size_t>(i)] * s;
      magnet += program.lambda[static_cast<std::size_t>(i)] * s;
    }
    diag[idx] = program.g4 * (field + 0.25 * magnet * magnet);
  }

  // Ground state of the bare transverse term: every spin down along z, which
  // in this basis is the product of (|+> - |->)/sqrt(2).
  std::vector<cd> psi(dim);
  const double amp = std::pow(2.0, -0.5 * n);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const int zeros = n - std::popcount(idx);
    psi[idx] = cd(zeros % 2 == 0 ? amp : -amp, 0.0);
  }

  AdiabaticResult result;
  const double dt = total_time / steps;
  for (int step = 0; step < steps; ++step) {
    const double s = schedule.at((step + 0.5) / steps);
    // Diagonal problem phase.
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const double phase = -dt * s * diag[idx];
      psi[idx] *= cd(std::cos(phase), std::sin(phase));
    }
    // Transverse term: sigma_z flips sigma-x eigenstates, one rotation per atom.
    const double theta = dt * (1.0 - s) * program.delta_m0 / 2.0;
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    for (int i = 0; i < n; ++i) {
      const std::size_t bit = 1ULL << i;
      for (std::size_t idx = 0; idx < dim; ++idx) {
        if (idx & bit) continue;
        const cd a = psi[idx];
        const cd b = psi[idx | bit];
        psi[idx] = c * a - cd(0.0, sn) * b;
        psi[idx | bit] = c * b - cd(0.0, sn) * a;
      }
    }
    double norm = 0.0;
    for (const auto& v : psi) norm += std::norm(v);
    result.norm_drift = std::max(result.norm_drift, std::abs(norm - 1.0));
  }

  result.probabilities.resize(dim);
  double emin = diag[0];
  for (std::size_t idx = 0; idx < dim; ++idx) {
    result.probabilities[idx] = std::norm(psi[idx]);
    emin = std::min(emin, diag[idx]);
  }
  for (std::size_t idx = 0; idx < dim; ++idx) {
    result.energy_expectation +=
        result.probabilities[idx] * (program.offset + diag[idx]);
    if (diag[idx] <= emin + 1e-9) result.success_probability += result.probabilities[idx];
  }
  return result;
}

} // namespace cavity
