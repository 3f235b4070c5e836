#include <doctest.h>

#include <cmath>

#include "bbm/mesh_fem.hpp"

using namespace bbm;

TEST_CASE("gauss rules are exact for polynomials of degree 2n-1") {
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule rule = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int q = 0; q < rule.n_points; ++q)
        s += rule.weights[q] * std::pow(rule.ref_nodes[q], k);
      CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("quadrature_for picks a sufficient rule") {
  for (int d = 0; d <= 20; ++d) {
    const QuadratureRule rule = quadrature_for(d);
    CHECK(2 * rule.n_points - 1 >= d);
  }
}

TEST_CASE("reference shape functions form a partition of unity") {
  for (int r = 1; r <= 4; ++r) {
    for (double xi : {0.0, 0.13, 0.5, 0.87, 1.0}) {
      double s = 0.0, ds = 0.0;
      for (int k = 0; k <= r; ++k) {
        s += lagrange_shape(r, k, xi);
        ds += lagrange_shape_derivative(r, k, xi);
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(ds == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("shape functions are nodal") {
  const int r = 3;
  for (int k = 0; k <= r; ++k)
    for (int j = 0; j <= r; ++j)
      CHECK(lagrange_shape(r, k, double(j) / r) ==
            doctest::Approx(k == j ? 1.0 : 0.0).epsilon(1e-13));
}

TEST_CASE("degree-of-freedom counts per boundary variant") {
  CHECK(build_space(0, 1, 10, 2, BoundaryVariant::Free)->dof_count() == 21);
  CHECK(build_space(0, 1, 10, 2, BoundaryVariant::ZeroEndpoint)->dof_count() == 19);
  CHECK(build_space(0, 1, 10, 2, BoundaryVariant::Periodic)->dof_count() == 20);
  CHECK(build_space(0, 1, 10, 1, BoundaryVariant::Free)->dof_count() == 11);
}

TEST_CASE("interpolation and evaluation reproduce polynomials of the degree") {
  for (int r = 1; r <= 4; ++r) {
    SpacePtr sp = build_space(-1.0, 2.0, 6, r, BoundaryVariant::Free);
    auto f = [r](double x) { return std::pow(0.5 * x + 0.3, r); };
    auto df = [r](double x) {
      return r * 0.5 * std::pow(0.5 * x + 0.3, r - 1);
    };
    const Coeffs c = interpolate(sp, f);
    for (double x : {-0.99, -0.3, 0.0, 0.72, 1.999}) {
      auto [v, d] = evaluate(c, x);
      CHECK(v == doctest::Approx(f(x)).epsilon(1e-12));
      CHECK(d == doctest::Approx(df(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("periodic evaluation wraps") {
  SpacePtr sp = build_space(0.0, 2.0, 8, 2, BoundaryVariant::Periodic);
  const double pi = std::acos(-1.0);
  const Coeffs c = interpolate(sp, [pi](double x) { return std::sin(pi * x); });
  CHECK(evaluate(c, 0.3).first == doctest::Approx(evaluate(c, 2.3).first).epsilon(1e-13));
  CHECK(evaluate(c, 0.3).first == doctest::Approx(evaluate(c, -1.7).first).epsilon(1e-13));
}

TEST_CASE("linear mass matrix rows match the closed form") {
  const double dx = 0.1;
  SpacePtr sp = build_space(0.0, 1.0, 10, 1, BoundaryVariant::Free);
  BandedMatrix m = assemble_mass(*sp);
  CHECK(m.entry(5, 4) == doctest::Approx(dx / 6.0).epsilon(1e-13));
  CHECK(m.entry(5, 5) == doctest::Approx(2.0 * dx / 3.0).epsilon(1e-13));
  CHECK(m.entry(5, 6) == doctest::Approx(dx / 6.0).epsilon(1e-13));
  CHECK(m.entry(0, 0) == doctest::Approx(dx / 3.0).epsilon(1e-13));
}

TEST_CASE("linear stiffness matrix rows match the closed form") {
  const double dx = 0.1;
  SpacePtr sp = build_space(0.0, 1.0, 10, 1, BoundaryVariant::Free);
  BandedMatrix s = assemble_stiffness(*sp);
  CHECK(s.entry(5, 4) == doctest::Approx(-1.0 / dx).epsilon(1e-12));
  CHECK(s.entry(5, 5) == doctest::Approx(2.0 / dx).epsilon(1e-12));
  CHECK(s.entry(5, 6) == doctest::Approx(-1.0 / dx).epsilon(1e-12));
  // annihilates constants
  const Eigen::VectorXd r = s.apply(Eigen::VectorXd::Ones(sp->dof_count()));
  CHECK(r.lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("periodic coupling matrix is skew and matches the linear stencil") {
  SpacePtr sp = build_space(0.0, 1.0, 10, 1, BoundaryVariant::Periodic);
  BandedMatrix g = assemble_coupling(*sp, *sp);
  const int n = sp->dof_count();
  CHECK(g.entry(5, 4) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(g.entry(5, 6) == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(g.entry(5, 5) == doctest::Approx(0.0).epsilon(1e-13));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      CHECK(g.entry(i, j) == doctest::Approx(-g.entry(j, i)).epsilon(1e-13));
}

TEST_CASE("mass matrices are symmetric positive definite") {
  for (auto bc : {BoundaryVariant::Free, BoundaryVariant::Periodic}) {
    SpacePtr sp = build_space(-1.0, 1.0, 7, 3, bc);
    BandedMatrix m = assemble_mass(*sp);
    Eigen::MatrixXd dense(m.sparse());
    CHECK((dense - dense.transpose()).lpNorm<Eigen::Infinity>() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("load vectors sum to the integral of the integrand") {
  SpacePtr sp = build_space(0.0, 1.0, 9, 2, BoundaryVariant::Free);
  const Eigen::VectorXd b =
      load_vector(*sp, [](double x) { return x; }, quadrature_for(4));
  CHECK(b.sum() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("projection is exact on members of the space and idempotent") {
  SpacePtr sp = build_space(0.0, 1.0, 8, 3, BoundaryVariant::Free);
  auto f = [](double x) { return 2.0 * x * x * x - x + 0.25; };
  const Coeffs p = l2_project(sp, f);
  for (double x : {0.1, 0.47, 0.93})
    CHECK(evaluate(p, x).first == doctest::Approx(f(x)).epsilon(1e-12));
  const Coeffs q = l2_project(sp, [&p](double x) { return evaluate(p, x).first; });
  CHECK((p.values - q.values).lpNorm<Eigen::Infinity>() < 1e-11);
}

TEST_CASE("cross mass of a space with itself is the mass matrix") {
  SpacePtr sp = build_space(0.0, 1.0, 6, 2, BoundaryVariant::Periodic);
  BandedMatrix m = assemble_mass(*sp);
  BandedMatrix x = assemble_cross_mass(*sp, *sp);
  for (int i = 0; i < sp->dof_count(); ++i)
    for (int j = 0; j < sp->dof_count(); ++j)
      CHECK(x.entry(i, j) == doctest::Approx(m.entry(i, j)).epsilon(1e-13));
}

TEST_CASE("zero-endpoint space constrains the boundary nodes") {
  SpacePtr sp = build_space(0.0, 1.0, 5, 2, BoundaryVariant::ZeroEndpoint);
  CHECK(sp->local_to_dof(0, 0) == -1);
  CHECK(sp->local_to_dof(4, 2) == -1);
  CHECK(sp->local_to_dof(0, 1) == 0);
  const Coeffs c(sp, Eigen::VectorXd::Ones(sp->dof_count()));
  CHECK(evaluate(c, 0.0).first == doctest::Approx(0.0));
  CHECK(evaluate(c, 1.0).first == doctest::Approx(0.0));
}

TEST_CASE("derivative loads agree with integration by parts on periodic spaces") {
  SpacePtr sp = build_space(0.0, 1.0, 8, 2, BoundaryVariant::Periodic);
  const double pi = std::acos(-1.0);
  const Coeffs c = l2_project(sp, [pi](double x) { return std::sin(2 * pi * x); });
  const QuadratureRule rule = quadrature_for(3 * sp->degree());
  std::vector<double> vals, ders;
  eval_at_quad(c, rule, &vals, &ders);
  // int g phi_i' = -int g' phi_i for periodic g in the space
  const Eigen::VectorXd lhs = load_deriv_from_quad(*sp, rule, vals);
  const Eigen::VectorXd rhs = -load_from_quad(*sp, rule, ders);
  CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-12);
}
