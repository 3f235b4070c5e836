#include <doctest.h>

#include <cmath>

#include "bbm/timeint.hpp"

using namespace bbm;

namespace {

// scalar ODE y' = y advanced with a tableau, for order checks
double ode_step(const ButcherTableau& tab, double y, double dt) {
  Eigen::VectorXd k(tab.stages);
  for (int i = 0; i < tab.stages; ++i) {
    double yi = y;
    for (int j = 0; j < i; ++j) yi += dt * tab.A(i, j) * k[j];
    k[i] = yi;
  }
  for (int i = 0; i < tab.stages; ++i) y += dt * tab.b[i] * k[i];
  return y;
}

MixedState pulse_state(const SemidiscOperator& op) {
  auto eta = [](double x) {
    const double s = 1.0 / std::cosh(0.67 * x);
    return 0.6 * s * s;
  };
  auto eta_x = [&eta](double x) {
    return -2.0 * 0.67 * eta(x) * std::tanh(0.67 * x);
  };
  auto u = [&eta](double x) { return 1.26 * eta(x) / (1.0 + eta(x)); };
  auto u_x = [&eta, &eta_x](double x) {
    const double d = 1.0 + eta(x);
    return 1.26 * eta_x(x) / (d * d);
  };
  return op.initial_state(eta, eta_x, u, u_x);
}

}  // namespace

TEST_CASE("classical tableau entries") {
  const ButcherTableau t = classic_rk4();
  CHECK(t.stages == 4);
  CHECK(t.b.sum() == doctest::Approx(1.0));
  CHECK(t.A(1, 0) == doctest::Approx(0.5));
  CHECK(t.A(3, 2) == doctest::Approx(1.0));
  for (int i = 0; i < 4; ++i)
    CHECK(t.c[i] == doctest::Approx(t.A.row(i).sum()));
}

TEST_CASE("one step on y' = y reproduces the frozen value") {
  const double y = ode_step(classic_rk4(), 1.0, 0.1);
  CHECK(y == doctest::Approx(1.1051708333333334).epsilon(1e-15));
}

TEST_CASE("tableau converges at its order on y' = y") {
  auto err = [](const ButcherTableau& tab, double dt) {
    double y = 1.0;
    const int n = static_cast<int>(std::llround(1.0 / dt));
    for (int i = 0; i < n; ++i) y = ode_step(tab, y, dt);
    return std::abs(y - std::exp(1.0));
  };
  const double r4 = std::log2(err(classic_rk4(), 0.02) / err(classic_rk4(), 0.01));
  CHECK(r4 == doctest::Approx(4.0).epsilon(0.05));
  const double r1 = std::log2(err(forward_euler(), 0.002) / err(forward_euler(), 0.001));
  CHECK(r1 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("relaxation factor matches the closed-form root of the cubic") {
  SemidiscOperator op(-20, 20, 200, 2, BcKind::Periodic, SchemeKind::Conservative);
  MixedState st = pulse_state(op);
  RelaxationConfig rc;
  Integrator ig(op, classic_rk4(), rc, {});
  const double dt = 0.2;
  const Slopes d = ig.direction(st, dt);
  const Coeffs de(st.H.space, d.dH), du(st.U.space, d.dU);

  const GammaResult g = solve_gamma(st.H, st.U, de, du, dt, rc);

  const RelaxationCoefficients co = relaxation_coefficients(st.H, st.U, de, du);
  const double disc = co.B * co.B - 4.0 * co.A * co.Gamma;
  REQUIRE(disc > 0.0);
  const double root_a = (-co.B + std::sqrt(disc)) / (2.0 * co.A);
  const double root_b = (-co.B - std::sqrt(disc)) / (2.0 * co.A);
  const double expected =
      (std::abs(root_a / dt - 1.0) < std::abs(root_b / dt - 1.0) ? root_a
                                                                 : root_b) / dt;
  CHECK(g.gamma == doctest::Approx(expected).epsilon(1e-8));
  CHECK(std::abs(g.gamma - 1.0) < 1e-2);
}

TEST_CASE("a relaxed step conserves the energy to rounding") {
  SemidiscOperator op(-20, 20, 200, 1, BcKind::Periodic, SchemeKind::Conservative);
  MixedState st = pulse_state(op);
  RelaxationConfig rc;
  Integrator ig(op, classic_rk4(), rc, {});
  const double e0 = invariants(st.H, st.U, 0.0).energy;
  for (int n = 0; n < 10; ++n) {
    const StepRecord rec = ig.step(st, 0.1);
    CHECK(rec.gamma > 0.5);
    CHECK(rec.gamma < 1.5);
  }
  CHECK(std::abs(invariants(st.H, st.U, st.t).energy - e0) < 1e-13);
}

TEST_CASE("zero update direction short-circuits to gamma = 1") {
  SpacePtr sp = build_space(0, 1, 8, 1, BoundaryVariant::Periodic);
  const GammaResult g = solve_gamma(Coeffs(sp), Coeffs(sp), Coeffs(sp),
                                    Coeffs(sp), 0.1, RelaxationConfig{});
  CHECK(g.gamma == 1.0);
  CHECK(g.iterations == 0);
}

TEST_CASE("relaxation is rejected with forcing or the standard scheme") {
  SemidiscOperator cons(-1, 1, 10, 1, BcKind::Periodic, SchemeKind::Conservative);
  SemidiscOperator stan(-1, 1, 10, 1, BcKind::Periodic, SchemeKind::Standard);
  RelaxationConfig on;
  Forcing f;
  f.f_eta = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(Integrator(cons, classic_rk4(), on, f), ConfigError);
  CHECK_THROWS_AS(Integrator(stan, classic_rk4(), on, {}), ConfigError);
  RelaxationConfig off;
  off.enabled = false;
  CHECK_NOTHROW(Integrator(stan, classic_rk4(), off, {}));
}

TEST_CASE("integrate covers [0, T] on the uniform grid without relaxation") {
  SemidiscOperator op(-5, 5, 50, 1, BcKind::Periodic, SchemeKind::Conservative);
  MixedState st = pulse_state(op);
  RelaxationConfig rc;
  rc.enabled = false;
  Integrator ig(op, classic_rk4(), rc, {});
  const IntegrationResult res = ig.integrate(st, 1.0, 0.1, 3);
  CHECK(res.n_steps == 10);
  CHECK(res.t_final == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.records.back().t_new == doctest::Approx(res.t_final));
  for (const StepRecord& r : res.records) CHECK(r.gamma == 1.0);
}

TEST_CASE("relaxed integration lands within one step of T") {
  SemidiscOperator op(-20, 20, 100, 1, BcKind::Periodic, SchemeKind::Conservative);
  MixedState st = pulse_state(op);
  RelaxationConfig rc;
  Integrator ig(op, classic_rk4(), rc, {});
  const IntegrationResult res = ig.integrate(st, 2.0, 0.2, 1);
  CHECK(std::abs(res.t_final - 2.0) < 0.2);
  CHECK(res.gamma_minus_one_max < 1e-3);
  CHECK(res.drift_energy < 1e-13);
}

TEST_CASE("a strongly unstable step size fails loudly") {
  SemidiscOperator op(-20, 20, 400, 1, BcKind::Periodic, SchemeKind::Conservative);
  MixedState st = pulse_state(op);
  RelaxationConfig rc;
  Integrator ig(op, classic_rk4(), rc, {});
  CHECK_THROWS_AS(ig.integrate(st, 40.0, 2.0, 1), NumericalError);
}
