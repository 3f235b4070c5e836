#include <doctest.h>

#include <cmath>

#include "bbm/diagnostics.hpp"
#include "bbm/timeint.hpp"
#include "bbm/waves.hpp"

using namespace bbm;

TEST_CASE("closed-form travelling wave values at the origin") {
  ExactTravellingWave ex;
  CHECK(ex.eta(0.0, 0.0) == doctest::Approx(-3.75).epsilon(1e-14));
  CHECK(ex.u(0.0, 0.0) == doctest::Approx(7.5).epsilon(1e-14));
  CHECK(ex.eta_x(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ex.u_x(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("closed-form travelling wave decays at infinity") {
  ExactTravellingWave ex;
  CHECK(std::abs(ex.eta(40.0, 0.0)) < 1e-10);
  CHECK(std::abs(ex.u(40.0, 0.0)) < 1e-10);
}

TEST_CASE("travelling wave is a function of x - c t only") {
  ExactTravellingWave ex;
  for (double s : {0.3, 1.7}) {
    CHECK(ex.eta(1.0, 0.5) ==
          doctest::Approx(ex.eta(1.0 - 2.5 * s, 0.5 - s)).epsilon(1e-13));
    CHECK(ex.u(1.0, 0.5) ==
          doctest::Approx(ex.u(1.0 - 2.5 * s, 0.5 - s)).epsilon(1e-13));
  }
}

TEST_CASE("derivative fields match finite differences") {
  ExactTravellingWave ex;
  const double h = 1e-6;
  for (double x : {-1.3, 0.2, 2.9}) {
    const double fd_eta = (ex.eta(x + h, 0.4) - ex.eta(x - h, 0.4)) / (2 * h);
    const double fd_u = (ex.u(x + h, 0.4) - ex.u(x - h, 0.4)) / (2 * h);
    CHECK(ex.eta_x(x, 0.4) == doctest::Approx(fd_eta).epsilon(1e-7));
    CHECK(ex.u_x(x, 0.4) == doctest::Approx(fd_u).epsilon(1e-7));
  }
}

TEST_CASE("reflective manufactured fields obey the wall conditions") {
  const ManufacturedCase mc = manufactured_case(BcKind::Reflective);
  for (double t : {0.0, 0.5, 1.0}) {
    CHECK(std::abs(mc.eta_x(0.0, t)) < 1e-12);
    CHECK(std::abs(mc.eta_x(1.0, t)) < 1e-12);
    CHECK(std::abs(mc.u(0.0, t)) < 1e-12);
    CHECK(std::abs(mc.u(1.0, t)) < 1e-12);
  }
}

TEST_CASE("periodic manufactured fields are 1-periodic") {
  const ManufacturedCase mc = manufactured_case(BcKind::Periodic);
  for (double x : {0.1, 0.67}) {
    CHECK(mc.eta(x, 0.3) == doctest::Approx(mc.eta(x + 1.0, 0.3)).epsilon(1e-12));
    CHECK(mc.u(x, 0.3) == doctest::Approx(mc.u(x + 1.0, 0.3)).epsilon(1e-12));
  }
}

TEST_CASE("hand-derived source terms pass the finite-difference oracle") {
  CHECK(forcing_fd_deviation(manufactured_case(BcKind::Reflective), 200, 1e-4) < 1e-6);
  CHECK(forcing_fd_deviation(manufactured_case(BcKind::Periodic), 200, 1e-4) < 1e-6);
}

TEST_CASE("solitary seed profile") {
  const double cs = std::sqrt(1.6);
  const SolitaryGuess g = solitary_guess(cs, 0.0);
  CHECK(g.amplitude == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(g.eta(0.0) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(g.eta(3.0) == doctest::Approx(g.eta(-3.0)).epsilon(1e-14));
  CHECK(g.u(1.0) * g.eta(1.0) > 0.0);
  CHECK_THROWS_AS(solitary_guess(0.9, 0.0), ConfigError);
}

TEST_CASE("wave generation converges and its residual trends down") {
  const TravellingWave w =
      petviashvili_solve(-20.0, 20.0, 200, 2, BcKind::Periodic, 1.2);
  CHECK(w.residual_history.back() < 1e-10);
  CHECK(w.amplitude > 0.0);
  CHECK(std::abs(w.peak_x) < 0.5);
  // no sustained growth over any 5-iteration window after the initial phase
  for (size_t k = 3; k + 5 < w.residual_history.size(); ++k)
    CHECK(w.residual_history[k + 5] < w.residual_history[k]);
}

TEST_CASE("boundary conditions do not change the generated amplitude") {
  PetviashviliConfig cfg;
  const TravellingWave p =
      petviashvili_solve(-40.0, 40.0, 400, 2, BcKind::Periodic, 1.3, cfg);
  const TravellingWave r =
      petviashvili_solve(-40.0, 40.0, 400, 2, BcKind::Reflective, 1.3, cfg);
  CHECK(std::abs(p.amplitude - r.amplitude) < 1e-8);
}

TEST_CASE("generated wave translates without changing shape") {
  const double dx = 0.1;
  const TravellingWave w =
      petviashvili_solve(-20.0, 20.0, 400, 3, BcKind::Periodic, std::sqrt(1.6));
  SemidiscOperator op(-20.0, 20.0, 400, 3, BcKind::Periodic,
                      SchemeKind::Conservative);
  MixedState st = superpose(op, {{&w, 0.0, 1.0}});
  Integrator ig(op, classic_rk4(), RelaxationConfig{}, {});
  ig.integrate(st, 10.0, dx, 1 << 30);

  const WaveProfile ref(w.eta, 0.0, 1.0, 40.0, w.peak_x);
  const double cs = w.c_s;
  const WaveTrackRecord rec =
      wave_errors(st.H, st.t, ref, cs, w.amplitude, 0.0, cs * st.t);
  CHECK(rec.E_shape < 1e-4);
}

TEST_CASE("iteration limit raises a numerical error") {
  PetviashviliConfig cfg;
  cfg.max_iter = 2;
  CHECK_THROWS_AS(
      petviashvili_solve(-20.0, 20.0, 100, 1, BcKind::Periodic, 1.3, cfg),
      NumericalError);
}

TEST_CASE("profile translation, scaling and wrapping") {
  SpacePtr sp = build_space(-10.0, 10.0, 100, 2, BoundaryVariant::Free);
  const Coeffs c = interpolate(sp, [](double x) {
    const double s = 1.0 / std::cosh(x);
    return s * s;
  });
  const WaveProfile p(c, 3.0, -2.0);
  CHECK(p.value(3.0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(p.value(4.0) == doctest::Approx(-2.0 * evaluate(c, 1.0).first).epsilon(1e-12));
  CHECK(p.value(50.0) == 0.0);  // outside the stored interval

  const WaveProfile q(c, 0.0, 1.0, 8.0);  // minimal image with period 8
  CHECK(q.value(8.3) == doctest::Approx(q.value(0.3)).epsilon(1e-12));

  const WaveProfile o(c, 1.0, 1.0, 0.0, 2.0);  // stored point 2 lands at 1
  CHECK(o.value(1.0) == doctest::Approx(evaluate(c, 2.0).first).epsilon(1e-12));
}

TEST_CASE("superposition places peaks where requested") {
  const TravellingWave w =
      petviashvili_solve(-20.0, 20.0, 200, 2, BcKind::Periodic, 1.2);
  SemidiscOperator op(-30.0, 30.0, 300, 2, BcKind::Periodic,
                      SchemeKind::Conservative);
  const MixedState st = superpose(op, {{&w, -12.0, 1.0}, {&w, 9.0, 1.0}});
  const double p1 = track_peak(st.H, -12.0, 1.0);
  const double p2 = track_peak(st.H, 9.0, 1.0);
  CHECK(p1 == doctest::Approx(-12.0).epsilon(1e-3));
  CHECK(p2 == doctest::Approx(9.0).epsilon(1e-3));
  CHECK(evaluate(st.H, -12.0).first == doctest::Approx(w.amplitude).epsilon(1e-6));
}
