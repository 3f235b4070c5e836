#include "bbm/functionals.hpp"

namespace bbm {

namespace {

QuadratureRule invariant_rule(const Coeffs& H) {
  return quadrature_for(3 * H.space->degree());
}

std::vector<double> cell_weights(const FemSpace& sp, const QuadratureRule& rule) {
  std::vector<double> w(size_t(sp.mesh().n_cells) * rule.n_points);
  const double dx = sp.mesh().dx;
  for (int cell = 0; cell < sp.mesh().n_cells; ++cell)
    for (int q = 0; q < rule.n_points; ++q)
      w[size_t(cell) * rule.n_points + q] = rule.weights[q] * dx;
  return w;
}

void check_compatible(const Coeffs& a, const Coeffs& b) {
  if (!a.space->same_mesh(*b.space) || a.space->degree() != b.space->degree())
    throw UsageError("functionals: coefficient vectors on incompatible meshes");
}

}  // namespace

InvariantRecord invariants(const Coeffs& H, const Coeffs& U, double t) {
  check_compatible(H, U);
  const QuadratureRule rule = invariant_rule(H);
  std::vector<double> h, hx, u, ux;
  eval_at_quad(H, rule, &h, &hx);
  eval_at_quad(U, rule, &u, &ux);
  const std::vector<double> w = cell_weights(*H.space, rule);

  InvariantRecord rec;
  rec.t = t;
  for (size_t q = 0; q < w.size(); ++q) {
    rec.mass += w[q] * h[q];
    rec.momentum += w[q] * u[q];
    rec.impulse += w[q] * (h[q] * u[q] + hx[q] * ux[q] / 6.0);
    rec.energy += 0.5 * w[q] * (h[q] * h[q] + (1.0 + h[q]) * u[q] * u[q]);
  }
  return rec;
}

RelaxationCoefficients relaxation_coefficients(const Coeffs& H, const Coeffs& U,
                                               const Coeffs& d_eta,
                                               const Coeffs& d_u) {
  check_compatible(H, U);
  check_compatible(H, d_eta);
  check_compatible(U, d_u);
  const QuadratureRule rule = invariant_rule(H);
  std::vector<double> h, u, de, du;
  eval_at_quad(H, rule, &h);
  eval_at_quad(U, rule, &u);
  eval_at_quad(d_eta, rule, &de);
  eval_at_quad(d_u, rule, &du);
  const std::vector<double> w = cell_weights(*H.space, rule);

  RelaxationCoefficients c;
  for (size_t q = 0; q < w.size(); ++q) {
    c.A += w[q] * de[q] * du[q] * du[q];
    c.B += w[q] * (de[q] * de[q] + (1.0 + h[q]) * du[q] * du[q] +
                   2.0 * u[q] * de[q] * du[q]);
    c.Gamma += w[q] * ((2.0 * h[q] + u[q] * u[q]) * de[q] +
                       2.0 * u[q] * (1.0 + h[q]) * du[q]);
  }
  return c;
}

EnergyProbe::EnergyProbe(const Coeffs& H, const Coeffs& U, const Coeffs& d_eta,
                         const Coeffs& d_u) {
  check_compatible(H, U);
  const QuadratureRule rule = invariant_rule(H);
  eval_at_quad(H, rule, &h_);
  eval_at_quad(U, rule, &u_);
  eval_at_quad(d_eta, rule, &de_);
  eval_at_quad(d_u, rule, &du_);
  w_ = cell_weights(*H.space, rule);
  for (size_t q = 0; q < w_.size(); ++q)
    energy0_ += 0.5 * w_[q] * (h_[q] * h_[q] + (1.0 + h_[q]) * u_[q] * u_[q]);
}

double EnergyProbe::energy_increment(double a) const {
  double acc = 0.0;
  for (size_t q = 0; q < w_.size(); ++q) {
    const double h = h_[q], u = u_[q], de = de_[q], du = du_[q];
    const double un = u + a * du;
    // (h+a de)^2 - h^2 + (1+h+a de)(u+a du)^2 - (1+h)u^2, expanded
    const double d = a * de * (2.0 * h + a * de) +
                     (1.0 + h) * a * du * (2.0 * u + a * du) +
                     a * de * un * un;
    acc += 0.5 * w_[q] * d;
  }
  return acc;
}

}  // namespace bbm
