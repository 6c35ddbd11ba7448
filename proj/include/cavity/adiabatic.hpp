#pragma once

#include <vector>

#include "cavity/mattis.hpp"

namespace cavity {

struct AdiabaticResult {
  std::vector<double> probabilities;  // Pauli-x basis, index bit i = x_i
  double norm_drift = 0.0;            // max |norm - 1| over the evolution
  double energy_expectation = 0.0;    // of the final problem Hamiltonian
  double success_probability = 0.0;   // mass on the program-energy argmin set
};

/// First-order split-step integration of
///   H(t) = (delta_m(t)/2) sum_i sigma_z_i
///        + s(t) * g4 * ( sum_i h_i sigma_x_i + (sum_i lambda_i sigma_x_i)^2 / 4 )
/// with delta_m(t) = (1 - s(t)) delta_m0, in the sigma-x product eigenbasis
/// where the problem part is diagonal and each sigma_z acts as a bit flip.
/// Starts from the ground state of the bare transverse term.  atoms <= 12,
/// steps >= 100.
AdiabaticResult adiabatic_simulate(const MattisProgram& program, const RampSchedule& schedule,
                                   double total_time, int steps);

} // namespace cavity
