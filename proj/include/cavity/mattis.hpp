#pragma once

#include <string>
#include <vector>

#include "cavity/qubo.hpp"
#include "cavity/subset_sum.hpp"

namespace cavity {

struct RampSchedule {
  std::string shape;  // "linear" or "smoothstep"
  int steps = 0;
  std::vector<double> samples;  // s at t = i/(steps-1)

  double at(double t) const;  // evaluated from the shape, endpoints exact
};

/// steps >= 2; linear s(t) = t, smoothstep s(t) = 3t^2 - 2t^3.
RampSchedule ramp(const std::string& shape, int steps);

/// Hardware-facing program: per-atom couplings lambda_i = a_i / a_max, fields
/// h_i, coupling scale g4, transverse detuning, atom positions and ramp.
///
/// The evaluated classical energy at a binary assignment x (spins s = 2x - 1
/// in the Pauli-x eigenbasis) is
///
///     energy(x) = offset + g4 * ( sum_i h_i s_i + (sum_i lambda_i s_i)^2 / 4 )
///
/// which equals (sum_i x_i a_i - T)^2 / a_max^2 for a plain subset-sum
/// program, and objective / scale for a penalized one.  The quarter comes
/// from the x = (1+s)/2 expansion; physically the four-photon term runs at
/// g4/4 with B_i = g4 * h_i.  The h_i here are convention-exact; h_paper
/// records the -2 T a_i / a_max^2 coefficients for comparison.
struct MattisProgram {
  std::vector<double> lambda;
  std::vector<double> h;
  std::vector<double> h_paper;
  double g4 = 1.0;
  double delta_m0 = 0.0;
  double wavevector = 1.0;  // Q
  std::vector<double> positions;
  double scale = 1.0;   // exact objective = scale * energy(x)
  double offset = 0.0;  // constant term inside energy(x)

  std::vector<Radical> exact_weights;
  Radical exact_target;
  std::vector<RoleTag> roles;
  RampSchedule schedule;

  bool penalized = false;
  // Penalized programs only: the linear y-costs of both spin branches, and
  // the source objective pieces needed for exact audits.
  std::vector<Rational> linear_costs, linear_costs_alt;
  Rational linear_constant = 0, linear_constant_alt = 0;
  Rational delta = 0;

  int atoms() const { return static_cast<int>(lambda.size()); }
  double energy(const std::vector<int>& x) const;
};

MattisProgram to_mattis(const SubsetSumInstance& inst);
MattisProgram to_mattis_penalized(const PenalizedObjective& p);

/// X_i = arcsin(lambda_i) / Q, principal branch; |lambda| > 1 is a domain error.
std::vector<double> atom_positions(const std::vector<double>& lambdas, double wavevector);

/// Exact residual energy (sum_{i in x} a_i - T)^2 evaluated at 30 digits.
double exact_energy(const SubsetSumInstance& inst, const std::vector<int>& x);

/// Exhaustive audit over all 2^N assignments: max |energy(x) - exact/scale|,
/// plus argmin agreement between program and exact energies.  Errors out when
/// the two smallest distinct exact energies float within 1e-8 (separation
/// guard: float argmin would be meaningless).  N <= 20.
struct ArgminAudit {
  double max_energy_error = 0.0;
  bool argmin_sets_equal = false;
  std::vector<std::uint64_t> program_argmin;
  std::vector<std::uint64_t> exact_argmin;
};
ArgminAudit audit_argmin(const MattisProgram& program);

} // namespace cavity
