#pragma once

#include <functional>

#include "bbm/linalg.hpp"
#include "bbm/mesh_fem.hpp"

namespace bbm {

enum class SchemeKind { Conservative, Standard };
enum class BcKind { Reflective, Periodic };

const char* to_string(SchemeKind s);
const char* to_string(BcKind b);

// Source terms of the mass and momentum equations; absent means the
// homogeneous system.
struct Forcing {
  std::function<double(double, double)> f_eta;  // (x, t)
  std::function<double(double, double)> f_u;

  bool present() const { return bool(f_eta) || bool(f_u); }
};

// The quadruple (H, W, U, V) approximating (eta, eta_x, u, u_x).  The
// standard scheme carries only (H, U); W and V are then empty.
struct MixedState {
  Coeffs H, W, U, V;
  double t = 0.0;

  bool has_aux() const { return bool(W.space); }
};

// Stage slopes, one vector per evolved field.
struct Slopes {
  Eigen::VectorXd dH, dW, dU, dV;
};

// Assembles and factors, once, everything needed to turn a state into
// slopes: for the conservative scheme the two saddle operators of the mixed
// formulation, for the standard scheme the operators M + (1/6)S.
class SemidiscOperator {
 public:
  SemidiscOperator(double a, double b, int n_cells, int degree, BcKind bc,
                   SchemeKind scheme);

  SchemeKind scheme() const { return scheme_; }
  BcKind bc_kind() const { return bc_; }
  int degree() const { return degree_; }

  // Space pairing: reflective puts H, V in the free space and W, U in the
  // zero-endpoint space; periodic uses one periodic space for all four.
  const SpacePtr& h_space() const { return sp_h_; }
  const SpacePtr& u_space() const { return sp_u_; }
  const SpacePtr& w_space() const { return sp_u_; }
  const SpacePtr& v_space() const { return sp_h_; }

  // Initial data by L2-projection of the fields and their derivatives.
  MixedState initial_state(const std::function<double(double)>& eta0,
                           const std::function<double(double)>& eta0_x,
                           const std::function<double(double)>& u0,
                           const std::function<double(double)>& u0_x) const;

  // Projections with the cached mass factorizations.
  Coeffs project_onto_h(const std::function<double(double)>& f) const;
  Coeffs project_onto_u(const std::function<double(double)>& f) const;

  Slopes rhs(const MixedState& state, const Forcing& forcing, double t) const;

 private:
  Slopes rhs_conservative(const MixedState& state, const Forcing& forcing,
                          double t) const;
  Slopes rhs_standard(const MixedState& state, const Forcing& forcing,
                      double t) const;

  SchemeKind scheme_;
  BcKind bc_;
  int degree_;
  SpacePtr sp_h_, sp_u_;
  QuadratureRule product_rule_;  // exact for the degree-3r product loads
  FactoredOperator mass_h_, mass_u_;
  // conservative scheme
  BandedMatrix coupling_hw_, coupling_uv_;
  FactoredOperator saddle_hw_, saddle_uv_;
  // standard scheme
  FactoredOperator dispersive_h_, dispersive_u_;
};

}  // namespace bbm
