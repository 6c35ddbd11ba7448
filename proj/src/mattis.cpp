#include "cavity/mattis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "cavity/errors.hpp"

namespace cavity {

double RampSchedule::at(double t) const {
  if (t <= 0) return 0.0;
  if (t >= 1) return 1.0;
  if (shape == "linear") return t;
  if (shape == "smoothstep") return t * t * (3.0 - 2.0 * t);
  throw PreconditionError("ramp: unknown shape '" + shape + "'");
}

RampSchedule ramp(const std::string& shape, int steps) {
  if (steps < 2) throw PreconditionError("ramp: need at least 2 samples");
  if (shape != "linear" && shape != "smoothstep")
    throw PreconditionError("ramp: unknown shape '" + shape + "'");
  RampSchedule r;
  r.shape = shape;
  r.steps = steps;
  r.samples.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    r.samples.push_back(r.at(static_cast<double>(i) / (steps - 1)));
  r.samples.front() = 0.0;
  r.samples.back() = 1.0;
  return r;
}

double MattisProgram::energy(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != atoms())
    throw PreconditionError("mattis energy: assignment length mismatch");
  double field = 0.0, magnet = 0.0;
  for (int i = 0; i < atoms(); ++i) {
    const double s = x[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
    field += h[static_cast<std::size_t>(i)] * s;
    magnet += lambda[static_cast<std::size_t>(i)] * s;
  }
  return offset + g4 * (field + 0.25 * magnet * magnet);
}

std::vector<double> atom_positions(const std::vector<double>& lambdas, double wavevector) {
  if (wavevector <= 0) throw PreconditionError("atom positions: wavevector must be positive");
  std::vector<double> xs;
  xs.reserve(lambdas.size());
  for (double l : lambdas) {
    if (std::abs(l) > 1.0)
      throw PreconditionError("atom positions: |lambda| > 1 is not realizable as sin(QX)");
    xs.push_back(std::asin(l) / wavevector);
  }
  return xs;
}

namespace {

constexpr unsigned kEvalDigits = 30;

struct EmissionBase {
  std::vector<mpf_class> a;  // weight values
  mpf_class a_max;           // max |a_i|
  mpf_class c;               // (sum a / 2 - T) / a_max
  mpf_class target;
};

EmissionBase evaluate_base(const std::vector<Radical>& weights, const Radical& target) {
  EmissionBase base;
  Radical total;
  bool any_nonzero = false;
  for (const auto& w : weights) {
    base.a.push_back(w.eval(kEvalDigits));
    total += w;
    if (!w.is_zero()) any_nonzero = true;
  }
  if (!any_nonzero) throw PreconditionError("mattis emission: all weights are zero");
  base.a_max = abs(base.a.front());
  for (const auto& v : base.a) base.a_max = std::max(base.a_max, mpf_class(abs(v)));
  base.target = target.eval(kEvalDigits);
  base.c = (total.eval(kEvalDigits) / 2 - base.target) / base.a_max;
  return base;
}

void fill_common(MattisProgram& p, const EmissionBase& base) {
  const std::size_t n = base.a.size();
  p.lambda.resize(n);
  p.h_paper.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.lambda[i] = mpf_class(base.a[i] / base.a_max).get_d();
    p.h_paper[i] = mpf_class(-2 * base.target * base.a[i] / (base.a_max * base.a_max)).get_d();
  }
  p.positions = atom_positions(p.lambda, p.wavevector);
  double hmax = 0.0, l2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    hmax = std::max(hmax, std::abs(p.h[i]));
    l2 += p.lambda[i] * p.lambda[i];
  }
  // Initial transverse term dominates the problem part.
  p.delta_m0 = 2.0 * (hmax + l2);
  p.schedule = ramp("linear", 101);
}

} // namespace

MattisProgram to_mattis(const SubsetSumInstance& inst) {
  EmissionBase base = evaluate_base(inst.weights, inst.target);
  MattisProgram p;
  p.exact_weights = inst.weights;
  p.exact_target = inst.target;
  p.roles = inst.roles;
  const std::size_t n = base.a.size();
  p.h.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.h[i] = mpf_class(base.c * base.a[i] / base.a_max).get_d();
  p.offset = mpf_class(base.c * base.c).get_d();
  p.scale = mpf_class(base.a_max * base.a_max).get_d();
  fill_common(p, base);
  return p;
}

MattisProgram to_mattis_penalized(const PenalizedObjective& po) {
  EmissionBase base = evaluate_base(po.constraint.weights, po.constraint.target);
  MattisProgram p;
  p.penalized = true;
  p.exact_weights = po.constraint.weights;
  p.exact_target = po.constraint.target;
  p.roles = po.constraint.roles;
  p.linear_costs = po.linear_costs;
  p.linear_costs_alt = po.linear_costs_alt;
  p.linear_constant = po.constant;
  p.linear_constant_alt = po.constant_alt;
  p.delta = po.delta;

  const std::size_t n = base.a.size();
  const mp_bitcnt_t prec = base.a_max.get_prec();
  mpf_class delta_f(0, prec);
  mpf_set_q(delta_f.get_mpf_t(), po.delta.get_mpq_t());
  mpf_class denom = delta_f * base.a_max * base.a_max;  // Delta * a_max^2

  // Linear y-costs fold onto the field channel: J_k y_k contributes
  // (J_k / 2) s_k plus a constant under y = (1+s)/2, all divided by the
  // Delta * a_max^2 unit of the emitted energy.
  p.h.resize(n);
  mpf_class cost_sum(0, prec);
  for (std::size_t i = 0; i < n; ++i) {
    mpf_class hi = base.c * base.a[i] / base.a_max;
    if (i < po.linear_costs.size()) {
      mpf_class cost(0, prec);
      mpf_set_q(cost.get_mpf_t(), po.linear_costs[i].get_mpq_t());
      hi += cost / (2 * denom);
      cost_sum += cost;
    }
    p.h[i] = mpf_class(hi).get_d();
  }
  mpf_class constant(0, prec);
  mpf_set_q(constant.get_mpf_t(), po.constant.get_mpq_t());
  p.offset = mpf_class(base.c * base.c + (constant + cost_sum / 2) / denom).get_d();
  p.scale = mpf_class(denom).get_d();
  fill_common(p, base);
  return p;
}

double exact_energy(const SubsetSumInstance& inst, const std::vector<int>& x) {
  if (x.size() != inst.weights.size())
    throw PreconditionError("exact energy: assignment length mismatch");
  Radical residual = -inst.target;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) residual += inst.weights[i];
  mpf_class v = residual.eval(kEvalDigits);
  return mpf_class(v * v).get_d();
}

ArgminAudit audit_argmin(const MattisProgram& program) {
  if (program.penalized)
    throw PreconditionError("audit_argmin: penalized programs use the sampled check instead");
  const int n = program.atoms();
  if (n < 1 || n > 20) throw SizeCapError("audit_argmin: atom count out of range");

  // Residuals as exact integer vectors over the instance's ranks; two
  // assignments share an exact energy iff their residuals match up to sign.
  std::map<SquarefreeRank, int> slot;
  for (const auto& w : program.exact_weights)
    for (const auto& [p, c] : w.terms()) slot.emplace(p, 0);
  for (const auto& [p, c] : program.exact_target.terms()) slot.emplace(p, 0);
  int next = 0;
  for (auto& [p, s] : slot) s = next++;
  const std::size_t nr = slot.size();
  std::vector<std::vector<long>> wvec(static_cast<std::size_t>(n),
                                           std::vector<long>(nr, 0));
  std::vector<long> tvec(nr, 0);
  for (int i = 0; i < n; ++i)
    for (const auto& [p, c] : program.exact_weights[static_cast<std::size_t>(i)].terms())
      wvec[static_cast<std::size_t>(i)][static_cast<std::size_t>(slot[p])] = c.get_si();
  for (const auto& [p, c] : program.exact_target.terms())
    tvec[static_cast<std::size_t>(slot[p])] = c.get_si();

  // sqrt values at audit precision.
  const mp_bitcnt_t prec = 256;
  std::vector<mpf_class> roots;
  for (const auto& [p, s] : slot) {
    mpf_class r(squarefree(p), prec);
    mpf_sqrt(r.get_mpf_t(), r.get_mpf_t());
    roots.push_back(r);
  }

  const std::uint64_t total = 1ULL << n;
  std::vector<double> exact(total), prog(total);
  std::vector<std::vector<long>> residuals(total);
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<long> r(tvec);
    for (auto& v : r) v = -v;
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1);
      if (x[static_cast<std::size_t>(i)])
        for (std::size_t s = 0; s < nr; ++s) r[s] += wvec[static_cast<std::size_t>(i)][s];
    }
    mpf_class value(0, prec);
    for (std::size_t s = 0; s < nr; ++s)
      if (r[s] != 0) value += mpf_class(r[s], prec) * roots[s];
    mpf_class amax2(program.scale, prec);
    exact[mask] = mpf_class(value * value / amax2).get_d();
    prog[mask] = program.energy(x);
    residuals[mask] = std::move(r);
  }

  ArgminAudit audit;
  for (std::uint64_t mask = 0; mask < total; ++mask)
    audit.max_energy_error = std::max(audit.max_energy_error, std::abs(prog[mask] - exact[mask]));

  // Separation guard between the two smallest distinct exact levels.
  std::uint64_t best = 0;
  for (std::uint64_t mask = 1; mask < total; ++mask)
    if (exact[mask] < exact[best]) best = mask;
  auto same_level = [&](std::uint64_t a, std::uint64_t b) {
    const auto& ra = residuals[a];
    const auto& rb = residuals[b];
    bool plus = true, minus = true;
    for (std::size_t s = 0; s < nr; ++s) {
      if (ra[s] != rb[s]) plus = false;
      if (ra[s] != -rb[s]) minus = false;
    }
    return plus || minus;
  };
  double second = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (same_level(mask, best)) {
      audit.exact_argmin.push_back(mask);
    } else {
      second = std::min(second, exact[mask]);
    }
  }
  if (std::isfinite(second) && second - exact[best] < 1e-8)
    throw PreconditionError("audit_argmin: the two smallest distinct exact energies float within "
                            "1e-8; program argmin would be unreliable");

  double pmin = *std::min_element(prog.begin(), prog.end());
  for (std::uint64_t mask = 0; mask < total; ++mask)
    if (prog[mask] <= pmin + 1e-9) audit.program_argmin.push_back(mask);
  audit.argmin_sets_equal = audit.program_argmin == audit.exact_argmin;
  return audit;
}

} // namespace cavity
