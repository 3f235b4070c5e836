#include "bbm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace bbm {

namespace {

struct CaseFields {
  std::function<double(double, double)> eta, eta_x, u, u_x;
  Forcing forcing;
  BcKind bc = BcKind::Reflective;
  double a = 0.0, b = 1.0;
  bool relax = false;
};

CaseFields fields_for(const ConvergenceConfig& cfg) {
  CaseFields f;
  switch (cfg.kind) {
    case ConvergenceCase::ManufacturedReflective:
    case ConvergenceCase::ManufacturedPeriodic: {
      const BcKind bc = cfg.kind == ConvergenceCase::ManufacturedReflective
                            ? BcKind::Reflective
                            : BcKind::Periodic;
      ManufacturedCase mc = manufactured_case(bc);
      f.eta = mc.eta;
      f.eta_x = mc.eta_x;
      f.u = mc.u;
      f.u_x = mc.u_x;
      f.forcing = mc.forcing;
      f.bc = bc;
      f.a = 0.0;
      f.b = 1.0;
      f.relax = false;
      break;
    }
    case ConvergenceCase::ExactTravellingWave: {
      ExactTravellingWave ex;
      // on the periodic domain the pulse re-enters through the boundary, so
      // the comparison point is the minimal image of the travel coordinate
      const double period = cfg.b - cfg.a;
      auto wrap = [ex, period](double x, double t) {
        const double y = x - ex.direction * ExactTravellingWave::speed * t;
        return y - period * std::round(y / period);
      };
      f.eta = [ex, wrap](double x, double t) { return ex.eta(wrap(x, t), 0.0); };
      f.eta_x = [ex, wrap](double x, double t) { return ex.eta_x(wrap(x, t), 0.0); };
      f.u = [ex, wrap](double x, double t) { return ex.u(wrap(x, t), 0.0); };
      f.u_x = [ex, wrap](double x, double t) { return ex.u_x(wrap(x, t), 0.0); };
      f.bc = BcKind::Periodic;
      f.a = cfg.a;
      f.b = cfg.b;
      f.relax = cfg.relax && cfg.scheme == SchemeKind::Conservative;
      break;
    }
  }
  return f;
}

ConvergenceRow run_one_resolution(const ConvergenceConfig& cfg,
                                  const CaseFields& f, double dx) {
  const int n = static_cast<int>(std::llround((f.b - f.a) / dx));
  SemidiscOperator op(f.a, f.b, n, cfg.degree, f.bc, cfg.scheme);
  MixedState st = op.initial_state(
      [&f](double x) { return f.eta(x, 0.0); },
      [&f](double x) { return f.eta_x(x, 0.0); },
      [&f](double x) { return f.u(x, 0.0); },
      [&f](double x) { return f.u_x(x, 0.0); });

  RelaxationConfig rc;
  rc.enabled = f.relax;
  Integrator ig(op, classic_rk4(), rc, f.forcing);
  ig.integrate(st, cfg.T, cfg.dt_ratio * dx, 1 << 30);
  const double tf = st.t;

  auto at = [tf](const std::function<double(double, double)>& g) {
    return [g, tf](double x) { return g(x, tf); };
  };

  ConvergenceRow row;
  row.dx = dx;
  row.t_final = tf;
  row.E0_H = norm_error(st.H, at(f.eta), at(f.eta_x), 0);
  row.E1_H = norm_error(st.H, at(f.eta), at(f.eta_x), 1);
  row.E0_U = norm_error(st.U, at(f.u), at(f.u_x), 0);
  row.E1_U = norm_error(st.U, at(f.u), at(f.u_x), 1);
  if (st.has_aux()) {
    row.tE1_H = modified_h1_error(st.H, st.W, at(f.eta), at(f.eta_x));
    row.tE1_U = modified_h1_error(st.U, st.V, at(f.u), at(f.u_x));
  }
  return row;
}

void attach_rates(std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 2) return;
  std::vector<double> dxs;
  for (const ConvergenceRow& r : rows) dxs.push_back(r.dx);
  auto column = [&rows](auto get) {
    std::vector<double> v;
    for (const ConvergenceRow& r : rows) v.push_back(get(r));
    return v;
  };
  auto fill = [&rows, &dxs, &column](auto get, auto set) {
    const auto rates = convergence_rates(column(get), dxs);
    for (size_t k = 1; k < rows.size(); ++k) set(rows[k], rates[k - 1]);
  };
  using R = ConvergenceRow;
  using Opt = std::optional<double>;
  fill([](const R& r) { return r.E0_H; }, [](R& r, Opt v) { r.R0_H = v; });
  fill([](const R& r) { return r.E1_H; }, [](R& r, Opt v) { r.R1_H = v; });
  fill([](const R& r) { return r.E0_U; }, [](R& r, Opt v) { r.R0_U = v; });
  fill([](const R& r) { return r.E1_U; }, [](R& r, Opt v) { r.R1_U = v; });
  if (rows.front().tE1_H) {
    fill([](const R& r) { return *r.tE1_H; }, [](R& r, Opt v) { r.tR1_H = v; });
    fill([](const R& r) { return *r.tE1_U; }, [](R& r, Opt v) { r.tR1_U = v; });
  }
}

}  // namespace

std::vector<ConvergenceRow> run_convergence_study(const ConvergenceConfig& cfg) {
  if (cfg.dx_list.empty())
    throw ConfigError("convergence study needs at least one resolution");
  for (size_t k = 1; k < cfg.dx_list.size(); ++k)
    if (cfg.dx_list[k] >= cfg.dx_list[k - 1])
      throw ConfigError("resolutions must strictly decrease");

  const CaseFields f = fields_for(cfg);
  std::vector<ConvergenceRow> rows(cfg.dx_list.size());

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (size_t k = 0; k < cfg.dx_list.size(); ++k)
      rows[k] = run_one_resolution(cfg, f, cfg.dx_list[k]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&]() {
        for (size_t k = next.fetch_add(1); k < cfg.dx_list.size();
             k = next.fetch_add(1))
          rows[k] = run_one_resolution(cfg, f, cfg.dx_list[k]);
      });
    for (std::thread& t : pool) t.join();
  }

  attach_rates(rows);
  return rows;
}

SolitaryResult run_solitary_propagation(const SolitaryConfig& cfg) {
  const int n = static_cast<int>(std::llround((cfg.b - cfg.a) / cfg.dx));
  SolitaryResult res;
  if (cfg.seed) {
    res.wave = *cfg.seed;
  } else {
    res.wave = petviashvili_solve(cfg.a, cfg.b, n, cfg.gen_degree, cfg.bc,
                                  cfg.c_s, cfg.petviashvili);
  }

  SemidiscOperator op(cfg.a, cfg.b, n, cfg.degree, cfg.bc, cfg.scheme);
  MixedState st = superpose(op, {{&res.wave, cfg.x0, 1.0}});

  RelaxationConfig rc;
  rc.enabled = cfg.relax;
  Integrator ig(op, classic_rk4(), rc, {});

  const double period = cfg.bc == BcKind::Periodic ? cfg.b - cfg.a : 0.0;
  const WaveProfile ref(res.wave.eta, 0.0, 1.0, period, res.wave.peak_x);

  const double x_star0 = track_peak(st.H, cfg.x0, 10.0 * cfg.dx);
  res.H0 = evaluate(st.H, x_star0).first;
  res.track.push_back(
      wave_errors(st.H, 0.0, ref, cfg.c_s, res.H0, x_star0, x_star0));

  const InvariantRecord first = invariants(st.H, st.U, st.t);
  res.gamma_minus_one_min = std::numeric_limits<double>::infinity();
  res.gamma_minus_one_max = -std::numeric_limits<double>::infinity();

  const long stride =
      std::max<long>(1, std::llround(cfg.track_every_t / cfg.dt));
  double prev_x = x_star0, prev_t = 0.0;
  StepRecord last;
  const double t_end = cfg.T - 1e-9 * cfg.dt;
  while (st.t < t_end) {
    last = ig.step(st, cfg.dt);
    ++res.n_steps;
    res.drift.mass = std::max(res.drift.mass,
                              std::abs(last.invariants.mass - first.mass));
    res.drift.momentum = std::max(
        res.drift.momentum, std::abs(last.invariants.momentum - first.momentum));
    res.drift.impulse = std::max(
        res.drift.impulse, std::abs(last.invariants.impulse - first.impulse));
    res.drift.energy = std::max(res.drift.energy,
                                std::abs(last.invariants.energy - first.energy));
    res.gamma_minus_one_min = std::min(res.gamma_minus_one_min, last.gamma - 1.0);
    res.gamma_minus_one_max = std::max(res.gamma_minus_one_max, last.gamma - 1.0);

    if (res.n_steps % stride == 0 || st.t >= t_end) {
      res.steps.push_back(last);
      const double center = prev_x + cfg.c_s * (st.t - prev_t);
      const WaveTrackRecord w =
          wave_errors(st.H, st.t, ref, cfg.c_s, res.H0, x_star0, center);
      res.track.push_back(w);
      prev_x = w.x_star;
      prev_t = st.t;
    }
  }
  if (res.n_steps == 0) {
    res.gamma_minus_one_min = 0.0;
    res.gamma_minus_one_max = 0.0;
  }
  res.t_final = st.t;
  return res;
}

namespace {

Snapshot take_snapshot(const MixedState& st, const SpacePtr& sp) {
  Snapshot s;
  s.t = st.t;
  s.x = sp->node_coords();
  s.H.reserve(s.x.size());
  s.U.reserve(s.x.size());
  for (double x : s.x) {
    s.H.push_back(evaluate(st.H, x).first);
    s.U.push_back(evaluate(st.U, x).first);
  }
  return s;
}

PropagationResult monitored_run(const SemidiscOperator& op, MixedState& st,
                                double dt, double T, bool relax,
                                std::vector<double> snapshot_times,
                                int stride) {
  std::sort(snapshot_times.begin(), snapshot_times.end());
  size_t next_snap = 0;

  PropagationResult res;
  while (next_snap < snapshot_times.size() &&
         snapshot_times[next_snap] <= st.t) {
    res.snapshots.push_back(take_snapshot(st, op.h_space()));
    ++next_snap;
  }

  RelaxationConfig rc;
  rc.enabled = relax;
  Integrator ig(op, classic_rk4(), rc, {});

  const InvariantRecord first = invariants(st.H, st.U, st.t);
  res.gamma_minus_one_min = std::numeric_limits<double>::infinity();
  res.gamma_minus_one_max = -std::numeric_limits<double>::infinity();

  StepRecord last;
  const double t_end = T - 1e-9 * dt;
  while (st.t < t_end) {
    last = ig.step(st, dt);
    ++res.n_steps;
    res.drift.mass = std::max(res.drift.mass,
                              std::abs(last.invariants.mass - first.mass));
    res.drift.momentum = std::max(
        res.drift.momentum, std::abs(last.invariants.momentum - first.momentum));
    res.drift.impulse = std::max(
        res.drift.impulse, std::abs(last.invariants.impulse - first.impulse));
    res.drift.energy = std::max(res.drift.energy,
                                std::abs(last.invariants.energy - first.energy));
    res.gamma_minus_one_min = std::min(res.gamma_minus_one_min, last.gamma - 1.0);
    res.gamma_minus_one_max = std::max(res.gamma_minus_one_max, last.gamma - 1.0);
    if (res.n_steps % stride == 0 || st.t >= t_end) res.steps.push_back(last);
    while (next_snap < snapshot_times.size() &&
           st.t >= snapshot_times[next_snap]) {
      res.snapshots.push_back(take_snapshot(st, op.h_space()));
      ++next_snap;
    }
  }
  if (res.n_steps == 0) {
    res.gamma_minus_one_min = 0.0;
    res.gamma_minus_one_max = 0.0;
  }
  res.t_final = st.t;
  return res;
}

}  // namespace

PropagationResult run_collision(const CollisionConfig& cfg) {
  const int n_gen =
      static_cast<int>(std::llround((cfg.gen_b - cfg.gen_a) / cfg.dx));
  const TravellingWave fast =
      petviashvili_solve(cfg.gen_a, cfg.gen_b, n_gen, cfg.gen_degree, cfg.bc,
                         cfg.cs_fast, cfg.petviashvili);
  const TravellingWave slow =
      petviashvili_solve(cfg.gen_a, cfg.gen_b, n_gen, cfg.gen_degree, cfg.bc,
                         cfg.cs_slow, cfg.petviashvili);

  const int n = static_cast<int>(std::llround((cfg.b - cfg.a) / cfg.dx));
  SemidiscOperator op(cfg.a, cfg.b, n, cfg.degree, cfg.bc,
                      SchemeKind::Conservative);
  MixedState st = superpose(
      op, {{&fast, cfg.center_fast, 1.0}, {&slow, cfg.center_slow, 1.0}});
  return monitored_run(op, st, cfg.dt, cfg.T, cfg.relax, cfg.snapshot_times,
                       cfg.invariant_stride);
}

PropagationResult run_reflection(const ReflectionConfig& cfg) {
  const int n = static_cast<int>(std::llround((cfg.b - cfg.a) / cfg.dx));
  const TravellingWave wave =
      petviashvili_solve(cfg.a, cfg.b, n, cfg.gen_degree, BcKind::Reflective,
                         cfg.c_s, cfg.petviashvili);

  SemidiscOperator op(cfg.a, cfg.b, n, cfg.degree, BcKind::Reflective,
                      SchemeKind::Conservative);
  MixedState st = superpose(op, {{&wave, cfg.center, 1.0}});
  return monitored_run(op, st, cfg.dt, cfg.T, cfg.relax, cfg.snapshot_times,
                       cfg.invariant_stride);
}

}  // namespace bbm
