#include <doctest.h>

#include <cmath>
#include <random>

#include "bbm/functionals.hpp"

using namespace bbm;

namespace {

Coeffs random_coeffs(const SpacePtr& sp, unsigned seed, double amp = 0.3) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-amp, amp);
  Coeffs c(sp);
  for (int i = 0; i < c.values.size(); ++i) c.values[i] = dist(rng);
  return c;
}

}  // namespace

TEST_CASE("invariants of constant elevation and zero velocity") {
  SpacePtr sp = build_space(0.0, 2.0, 10, 2, BoundaryVariant::Periodic);
  Coeffs H(sp, Eigen::VectorXd::Constant(sp->dof_count(), 0.5));
  Coeffs U(sp);
  const InvariantRecord r = invariants(H, U, 1.25);
  CHECK(r.t == doctest::Approx(1.25));
  CHECK(r.mass == doctest::Approx(1.0).epsilon(1e-13));        // 0.5 * 2
  CHECK(r.momentum == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(r.impulse == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(r.energy == doctest::Approx(0.25).epsilon(1e-13));     // (1/2)*0.25*2
}

TEST_CASE("impulse includes the derivative pairing") {
  SpacePtr sp = build_space(0.0, 1.0, 8, 1, BoundaryVariant::Free);
  const Coeffs H = interpolate(sp, [](double x) { return x; });
  const Coeffs U = interpolate(sp, [](double x) { return x; });
  // int x*x + (1/6) * 1 = 1/3 + 1/6
  const InvariantRecord r = invariants(H, U, 0.0);
  CHECK(r.impulse == doctest::Approx(1.0 / 3.0 + 1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("energy of known fields") {
  SpacePtr sp = build_space(0.0, 1.0, 12, 2, BoundaryVariant::Free);
  const Coeffs H = interpolate(sp, [](double) { return 0.2; });
  const Coeffs U = interpolate(sp, [](double) { return 0.1; });
  // (1/2) (0.04 + 1.2 * 0.01) = 0.026
  const InvariantRecord r = invariants(H, U, 0.0);
  CHECK(r.energy == doctest::Approx(0.026).epsilon(1e-13));
}

TEST_CASE("energy increment matches its cubic coefficient expansion") {
  SpacePtr sp = build_space(-1.0, 1.0, 14, 3, BoundaryVariant::Periodic);
  const Coeffs H = random_coeffs(sp, 3), U = random_coeffs(sp, 4);
  const Coeffs de = random_coeffs(sp, 5), du = random_coeffs(sp, 6);
  const RelaxationCoefficients rc = relaxation_coefficients(H, U, de, du);
  const EnergyProbe probe(H, U, de, du);
  for (double a : {1e-3, 0.02, 0.17, 0.6}) {
    const double cubic = 0.5 * (rc.Gamma * a + rc.B * a * a + rc.A * a * a * a);
    CHECK(probe.energy_increment(a) ==
          doctest::Approx(cubic).epsilon(1e-12));
  }
}

TEST_CASE("linear coefficient is the directional derivative of the energy") {
  SpacePtr sp = build_space(0.0, 1.0, 10, 2, BoundaryVariant::Periodic);
  const Coeffs H = random_coeffs(sp, 7), U = random_coeffs(sp, 8);
  const Coeffs de = random_coeffs(sp, 9), du = random_coeffs(sp, 10);
  const RelaxationCoefficients rc = relaxation_coefficients(H, U, de, du);
  const EnergyProbe probe(H, U, de, du);
  const double h = 1e-6;
  const double fd = (probe.energy_increment(h) - probe.energy_increment(-h)) / (2 * h);
  CHECK(fd == doctest::Approx(0.5 * rc.Gamma).epsilon(1e-7));
}

TEST_CASE("probe energy agrees with the invariant functional") {
  SpacePtr sp = build_space(0.0, 3.0, 9, 3, BoundaryVariant::Periodic);
  const Coeffs H = random_coeffs(sp, 11), U = random_coeffs(sp, 12);
  const EnergyProbe probe(H, U, Coeffs(sp), Coeffs(sp));
  CHECK(probe.energy() ==
        doctest::Approx(invariants(H, U, 0.0).energy).epsilon(1e-13));
}

TEST_CASE("mismatched spaces are rejected") {
  SpacePtr a = build_space(0.0, 1.0, 8, 1, BoundaryVariant::Periodic);
  SpacePtr b = build_space(0.0, 1.0, 9, 1, BoundaryVariant::Periodic);
  CHECK_THROWS_AS(invariants(Coeffs(a), Coeffs(b), 0.0), UsageError);
}
