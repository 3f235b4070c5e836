#include "bbm/semidisc.hpp"

namespace bbm {

const char* to_string(SchemeKind s) {
  return s == SchemeKind::Conservative ? "conservative" : "standard";
}

const char* to_string(BcKind b) {
  return b == BcKind::Reflective ? "reflective" : "periodic";
}

SemidiscOperator::SemidiscOperator(double a, double b, int n_cells, int degree,
                                   BcKind bc, SchemeKind scheme)
    : scheme_(scheme), bc_(bc), degree_(degree),
      product_rule_(quadrature_for(3 * degree)) {
  if (bc == BcKind::Periodic) {
    sp_h_ = build_space(a, b, n_cells, degree, BoundaryVariant::Periodic);
    sp_u_ = sp_h_;
  } else {
    sp_h_ = build_space(a, b, n_cells, degree, BoundaryVariant::Free);
    sp_u_ = build_space(a, b, n_cells, degree, BoundaryVariant::ZeroEndpoint);
  }

  BandedMatrix mh = assemble_mass(*sp_h_);
  BandedMatrix mu = (sp_u_ == sp_h_) ? mh : assemble_mass(*sp_u_);
  mass_h_ = factor(mh);
  mass_u_ = (sp_u_ == sp_h_) ? mass_h_ : factor(mu);

  if (scheme == SchemeKind::Conservative) {
    // H/W system: rows in the H-space, auxiliary block in the W(=U)-space.
    coupling_hw_ = assemble_coupling(*sp_h_, *sp_u_);
    saddle_hw_ = factor(make_saddle(mh, coupling_hw_, mu));
    // U/V system: rows in the U-space, auxiliary block in the V(=H)-space.
    coupling_uv_ = assemble_coupling(*sp_u_, *sp_h_);
    saddle_uv_ = factor(make_saddle(mu, coupling_uv_, mh));
  } else {
    BandedMatrix sh = assemble_stiffness(*sp_h_);
    Eigen::SparseMatrix<double> oph = mh.sparse() + (1.0 / 6.0) * sh.sparse();
    dispersive_h_ = factor(oph);
    if (sp_u_ == sp_h_) {
      dispersive_u_ = dispersive_h_;
    } else {
      BandedMatrix su = assemble_stiffness(*sp_u_);
      Eigen::SparseMatrix<double> opu = mu.sparse() + (1.0 / 6.0) * su.sparse();
      dispersive_u_ = factor(opu);
    }
  }
}

Coeffs SemidiscOperator::project_onto_h(const std::function<double(double)>& f) const {
  Eigen::VectorXd b = load_vector(*sp_h_, f, transcendental_rule(degree_));
  return Coeffs(sp_h_, solve(mass_h_, b));
}

Coeffs SemidiscOperator::project_onto_u(const std::function<double(double)>& f) const {
  Eigen::VectorXd b = load_vector(*sp_u_, f, transcendental_rule(degree_));
  return Coeffs(sp_u_, solve(mass_u_, b));
}

MixedState SemidiscOperator::initial_state(
    const std::function<double(double)>& eta0,
    const std::function<double(double)>& eta0_x,
    const std::function<double(double)>& u0,
    const std::function<double(double)>& u0_x) const {
  MixedState s;
  s.H = project_onto_h(eta0);
  s.U = project_onto_u(u0);
  if (scheme_ == SchemeKind::Conservative) {
    s.W = project_onto_u(eta0_x);
    s.V = project_onto_h(u0_x);
  }
  s.t = 0.0;
  return s;
}

Slopes SemidiscOperator::rhs(const MixedState& state, const Forcing& forcing,
                             double t) const {
  if (state.H.space != sp_h_ || state.U.space != sp_u_)
    throw UsageError("SemidiscOperator::rhs: state spaces do not match operator");
  return scheme_ == SchemeKind::Conservative
             ? rhs_conservative(state, forcing, t)
             : rhs_standard(state, forcing, t);
}

Slopes SemidiscOperator::rhs_conservative(const MixedState& state,
                                          const Forcing& forcing, double t) const {
  const int nh = sp_h_->dof_count();
  const int nu = sp_u_->dof_count();

  std::vector<double> h, u;
  eval_at_quad(state.H, product_rule_, &h);
  eval_at_quad(state.U, product_rule_, &u);

  // f~ = P_u[(1+H)U], g~ = P_h[(1/2)U^2 + H]
  std::vector<double> flux(h.size()), head(h.size());
  for (size_t q = 0; q < h.size(); ++q) {
    flux[q] = (1.0 + h[q]) * u[q];
    head[q] = 0.5 * u[q] * u[q] + h[q];
  }
  const Eigen::VectorXd f_tilde =
      solve(mass_u_, load_from_quad(*sp_u_, product_rule_, flux));
  const Eigen::VectorXd g_tilde =
      solve(mass_h_, load_from_quad(*sp_h_, product_rule_, head));

  Eigen::VectorXd rhs_hw = Eigen::VectorXd::Zero(nh + nu);
  rhs_hw.head(nh) = coupling_hw_.apply(f_tilde);
  if (forcing.f_eta)
    rhs_hw.head(nh) += load_vector(
        *sp_h_, [&](double x) { return forcing.f_eta(x, t); },
        transcendental_rule(degree_));

  Eigen::VectorXd rhs_uv = Eigen::VectorXd::Zero(nu + nh);
  rhs_uv.head(nu) = coupling_uv_.apply(g_tilde);
  if (forcing.f_u)
    rhs_uv.head(nu) += load_vector(
        *sp_u_, [&](double x) { return forcing.f_u(x, t); },
        transcendental_rule(degree_));

  const Eigen::VectorXd sol_hw = solve(saddle_hw_, rhs_hw);
  const Eigen::VectorXd sol_uv = solve(saddle_uv_, rhs_uv);

  Slopes s;
  s.dH = sol_hw.head(nh);
  s.dW = sol_hw.tail(nu);
  s.dU = sol_uv.head(nu);
  s.dV = sol_uv.tail(nh);
  return s;
}

Slopes SemidiscOperator::rhs_standard(const MixedState& state,
                                      const Forcing& forcing, double t) const {
  std::vector<double> h, u;
  eval_at_quad(state.H, product_rule_, &h);
  eval_at_quad(state.U, product_rule_, &u);

  std::vector<double> flux(h.size()), head(h.size());
  for (size_t q = 0; q < h.size(); ++q) {
    flux[q] = (1.0 + h[q]) * u[q];
    head[q] = 0.5 * u[q] * u[q] + h[q];
  }

  Eigen::VectorXd bh = load_deriv_from_quad(*sp_h_, product_rule_, flux);
  if (forcing.f_eta)
    bh += load_vector(*sp_h_, [&](double x) { return forcing.f_eta(x, t); },
                      transcendental_rule(degree_));
  Eigen::VectorXd bu = load_deriv_from_quad(*sp_u_, product_rule_, head);
  if (forcing.f_u)
    bu += load_vector(*sp_u_, [&](double x) { return forcing.f_u(x, t); },
                      transcendental_rule(degree_));

  Slopes s;
  s.dH = solve(dispersive_h_, bh);
  s.dU = solve(dispersive_u_, bu);
  return s;
}

}  // namespace bbm
