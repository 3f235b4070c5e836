#include "bbm/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bbm {

ButcherTableau classic_rk4() {
  ButcherTableau t;
  t.stages = 4;
  t.order = 4;
  t.A = Eigen::MatrixXd::Zero(4, 4);
  t.A(1, 0) = 0.5;
  t.A(2, 1) = 0.5;
  t.A(3, 2) = 1.0;
  t.b = Eigen::VectorXd(4);
  t.b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
  t.c = Eigen::VectorXd(4);
  t.c << 0.0, 0.5, 0.5, 1.0;
  return t;
}

ButcherTableau forward_euler() {
  ButcherTableau t;
  t.stages = 1;
  t.order = 1;
  t.A = Eigen::MatrixXd::Zero(1, 1);
  t.b = Eigen::VectorXd::Constant(1, 1.0);
  t.c = Eigen::VectorXd::Zero(1);
  return t;
}

GammaResult solve_gamma(const Coeffs& H, const Coeffs& U, const Coeffs& d_eta,
                        const Coeffs& d_u, double dt,
                        const RelaxationConfig& config, double guess) {
  if (d_eta.values.lpNorm<Eigen::Infinity>() == 0.0 &&
      d_u.values.lpNorm<Eigen::Infinity>() == 0.0)
    return {1.0, 0};

  EnergyProbe probe(H, U, d_eta, d_u);
  const double scale = std::max(1.0, std::abs(probe.energy()));

  double g0 = guess;
  double g1 = guess + dt * dt;
  double r0 = probe.energy_increment(g0 * dt);
  double r1 = probe.energy_increment(g1 * dt);
  if (std::abs(r0) < std::abs(r1)) {
    std::swap(g0, g1);
    std::swap(r0, r1);
  }

  int iter = 0;
  while (iter < config.max_secant_iter) {
    if (r1 == 0.0) break;
    const double denom = r1 - r0;
    if (denom == 0.0) break;
    const double g2 = g1 - r1 * (g1 - g0) / denom;
    ++iter;
    g0 = g1;
    r0 = r1;
    g1 = g2;
    r1 = probe.energy_increment(g1 * dt);
    if (std::abs(g1 - g0) <= 1e-15 * std::max(1.0, std::abs(g1))) break;
  }

  if (!std::isfinite(g1) || std::abs(r1) > config.root_tol * scale)
    throw NumericalError("relaxation root solve did not converge");
  if (g1 <= 0.5 || g1 >= 1.5)
    throw NumericalError("relaxation coefficient left (1/2, 3/2)");
  return {g1, iter};
}

Integrator::Integrator(const SemidiscOperator& op, ButcherTableau tableau,
                       RelaxationConfig relax, Forcing forcing)
    : op_(op), tableau_(std::move(tableau)), relax_(relax),
      forcing_(std::move(forcing)) {
  if (relax_.enabled && forcing_.present())
    throw ConfigError("relaxation requires the homogeneous system");
  if (relax_.enabled && op_.scheme() != SchemeKind::Conservative)
    throw ConfigError("relaxation requires the conservative scheme");
}

Slopes Integrator::direction(const MixedState& state, double dt) const {
  const int s = tableau_.stages;
  std::vector<Slopes> f(s);
  MixedState stage = state;
  for (int i = 0; i < s; ++i) {
    stage.H.values = state.H.values;
    stage.U.values = state.U.values;
    if (state.has_aux()) {
      stage.W.values = state.W.values;
      stage.V.values = state.V.values;
    }
    for (int j = 0; j < i; ++j) {
      const double a = tableau_.A(i, j);
      if (a == 0.0) continue;
      stage.H.values += dt * a * f[j].dH;
      stage.U.values += dt * a * f[j].dU;
      if (state.has_aux()) {
        stage.W.values += dt * a * f[j].dW;
        stage.V.values += dt * a * f[j].dV;
      }
    }
    f[i] = op_.rhs(stage, forcing_, state.t + tableau_.c(i) * dt);
  }

  Slopes d;
  d.dH = Eigen::VectorXd::Zero(state.H.values.size());
  d.dU = Eigen::VectorXd::Zero(state.U.values.size());
  if (state.has_aux()) {
    d.dW = Eigen::VectorXd::Zero(state.W.values.size());
    d.dV = Eigen::VectorXd::Zero(state.V.values.size());
  }
  for (int i = 0; i < s; ++i) {
    const double b = tableau_.b(i);
    d.dH += b * f[i].dH;
    d.dU += b * f[i].dU;
    if (state.has_aux()) {
      d.dW += b * f[i].dW;
      d.dV += b * f[i].dV;
    }
  }
  return d;
}

StepRecord Integrator::step(MixedState& state, double dt) {
  const Slopes d = direction(state, dt);

  double gamma = 1.0;
  int iters = 0;
  if (relax_.enabled) {
    const Coeffs de(state.H.space, d.dH);
    const Coeffs du(state.U.space, d.dU);
    const GammaResult g =
        solve_gamma(state.H, state.U, de, du, dt, relax_, prev_gamma_);
    gamma = g.gamma;
    iters = g.iterations;
    prev_gamma_ = gamma;
  }

  const double a = gamma * dt;
  state.H.values += a * d.dH;
  state.U.values += a * d.dU;
  if (state.has_aux()) {
    state.W.values += a * d.dW;
    state.V.values += a * d.dV;
  }
  state.t += a;

  StepRecord rec;
  rec.t_new = state.t;
  rec.gamma = gamma;
  rec.secant_iterations = iters;
  rec.invariants = invariants(state.H, state.U, state.t);
  if (!std::isfinite(rec.invariants.energy) ||
      !std::isfinite(rec.invariants.mass))
    throw NumericalError("solution lost finiteness");
  return rec;
}

IntegrationResult Integrator::integrate(MixedState& state, double T, double dt,
                                        int record_stride) {
  if (dt <= 0.0) throw ConfigError("time step must be positive");
  if (record_stride < 1) record_stride = 1;

  IntegrationResult res;
  res.initial = invariants(state.H, state.U, state.t);
  res.gamma_minus_one_min = std::numeric_limits<double>::infinity();
  res.gamma_minus_one_max = -std::numeric_limits<double>::infinity();

  // The loop bound is shaved so accumulated roundoff in t cannot trigger a
  // spurious extra step past T.
  const double t_end = T - 1e-9 * dt;
  StepRecord last;
  bool have_last = false;
  while (state.t < t_end) {
    last = step(state, dt);
    have_last = true;
    ++res.n_steps;

    res.drift_mass = std::max(res.drift_mass,
                              std::abs(last.invariants.mass - res.initial.mass));
    res.drift_momentum =
        std::max(res.drift_momentum,
                 std::abs(last.invariants.momentum - res.initial.momentum));
    res.drift_impulse =
        std::max(res.drift_impulse,
                 std::abs(last.invariants.impulse - res.initial.impulse));
    res.drift_energy = std::max(
        res.drift_energy, std::abs(last.invariants.energy - res.initial.energy));
    res.gamma_minus_one_min =
        std::min(res.gamma_minus_one_min, last.gamma - 1.0);
    res.gamma_minus_one_max =
        std::max(res.gamma_minus_one_max, last.gamma - 1.0);

    if (res.n_steps % record_stride == 0) res.records.push_back(last);
  }
  if (have_last &&
      (res.records.empty() || res.records.back().t_new != last.t_new))
    res.records.push_back(last);
  if (res.n_steps == 0) {
    res.gamma_minus_one_min = 0.0;
    res.gamma_minus_one_max = 0.0;
  }
  res.t_final = state.t;
  return res;
}

}  // namespace bbm
