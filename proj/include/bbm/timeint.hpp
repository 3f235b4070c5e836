#pragma once

#include <vector>

#include "bbm/functionals.hpp"
#include "bbm/semidisc.hpp"

namespace bbm {

// Explicit Runge-Kutta tableau: strictly lower triangular A, sum(b) = 1,
// c_i = sum_j a_ij.
struct ButcherTableau {
  int stages = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  int order = 0;
};

// The classical four-stage, fourth-order method.
ButcherTableau classic_rk4();
ButcherTableau forward_euler();

struct RelaxationConfig {
  bool enabled = true;
  double root_tol = 1e-10;  // absolute, on the energy mismatch
  int max_secant_iter = 50;
};

struct StepRecord {
  double t_new = 0.0;
  double gamma = 1.0;  // exactly 1 when relaxation is disabled
  int secant_iterations = 0;
  InvariantRecord invariants;
};

struct GammaResult {
  double gamma = 1.0;
  int iterations = 0;
};

// Root of E(y + gamma*dt*d) = E(y) near gamma = 1, by secant iteration.
// Seeded with `guess` (the previous step's gamma, 1 on the first step) and
// guess + dt^2.  Aborts if the accepted root leaves (1/2, 3/2).
GammaResult solve_gamma(const Coeffs& H, const Coeffs& U, const Coeffs& d_eta,
                        const Coeffs& d_u, double dt,
                        const RelaxationConfig& config, double guess = 1.0);

struct IntegrationResult {
  std::vector<StepRecord> records;  // strided; always includes the last step
  InvariantRecord initial;
  // max_n |K(t^n) - K(t^0)| over every step, strided or not
  double drift_mass = 0.0, drift_momentum = 0.0, drift_impulse = 0.0,
         drift_energy = 0.0;
  double gamma_minus_one_min = 0.0, gamma_minus_one_max = 0.0;
  double t_final = 0.0;
  long n_steps = 0;
};

class Integrator {
 public:
  Integrator(const SemidiscOperator& op, ButcherTableau tableau,
             RelaxationConfig relax, Forcing forcing = {});

  // Stage combination d = sum_i b_i f_i; stages use the un-relaxed dt.
  Slopes direction(const MixedState& state, double dt) const;

  StepRecord step(MixedState& state, double dt);

  // Repeated steps until the accumulated (relaxed) time reaches T; the
  // final step is not shortened.
  IntegrationResult integrate(MixedState& state, double T, double dt,
                              int record_stride = 1);

 private:
  const SemidiscOperator& op_;
  ButcherTableau tableau_;
  RelaxationConfig relax_;
  Forcing forcing_;
  double prev_gamma_ = 1.0;
};

}  // namespace bbm
