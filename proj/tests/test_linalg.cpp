#include <doctest.h>

#include <random>

#include "bbm/linalg.hpp"

using namespace bbm;

namespace {

Eigen::VectorXd random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("factoring a mass matrix gives a working solver") {
  SpacePtr sp = build_space(0.0, 1.0, 12, 3, BoundaryVariant::Free);
  BandedMatrix m = assemble_mass(*sp);
  const FactoredOperator f = factor(m);
  const Eigen::VectorXd x = random_vector(sp->dof_count(), 1);
  const Eigen::VectorXd xr = solve(f, m.apply(x));
  CHECK((xr - x).lpNorm<Eigen::Infinity>() < 1e-11);
}

TEST_CASE("saddle operator has the expected block structure") {
  SpacePtr sp = build_space(0.0, 1.0, 5, 1, BoundaryVariant::Periodic);
  BandedMatrix m = assemble_mass(*sp);
  BandedMatrix g = assemble_coupling(*sp, *sp);
  const SaddleOperator sad = make_saddle(m, g, m);
  const int n = sp->dof_count();
  CHECK(sad.n_primary == n);
  CHECK(sad.n_auxiliary == n);
  Eigen::MatrixXd dense(sad.matrix);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CHECK(dense(i, j) == doctest::Approx(m.entry(i, j)).epsilon(1e-13));
      CHECK(dense(i, n + j) ==
            doctest::Approx(g.entry(i, j) / 6.0).epsilon(1e-13));
      CHECK(dense(n + i, j) ==
            doctest::Approx(g.entry(j, i) / 6.0).epsilon(1e-13));
      CHECK(dense(n + i, n + j) ==
            doctest::Approx(-m.entry(i, j) / 6.0).epsilon(1e-13));
    }
}

TEST_CASE("saddle solve round trip") {
  SpacePtr sph = build_space(-1.0, 1.0, 20, 2, BoundaryVariant::Free);
  SpacePtr spu = build_space(-1.0, 1.0, 20, 2, BoundaryVariant::ZeroEndpoint);
  BandedMatrix mh = assemble_mass(*sph);
  BandedMatrix mu = assemble_mass(*spu);
  BandedMatrix g = assemble_coupling(*sph, *spu);
  const SaddleOperator sad = make_saddle(mh, g, mu);
  const FactoredOperator f = factor(sad);
  const Eigen::VectorXd y = random_vector(sph->dof_count() + spu->dof_count(), 2);
  const Eigen::VectorXd yr = solve(f, sad.matrix * y);
  CHECK((yr - y).lpNorm<Eigen::Infinity>() < 1e-11);
}

TEST_CASE("singular matrices are rejected at factor time") {
  Eigen::SparseMatrix<double> z(4, 4);
  CHECK_THROWS_AS(factor(z), FactorizationError);
}

TEST_CASE("dimension mismatch is rejected at solve time") {
  SpacePtr sp = build_space(0.0, 1.0, 4, 1, BoundaryVariant::Free);
  const FactoredOperator f = factor(assemble_mass(*sp));
  CHECK_THROWS_AS(solve(f, Eigen::VectorXd::Zero(3)), UsageError);
}
