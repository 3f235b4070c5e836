#pragma once

#include <vector>

#include "bbm/mesh_fem.hpp"

namespace bbm {

// The four invariants of the system (g = 1, D = 1):
//   mass     M = int H
//   momentum I = int U
//   impulse  Hmp = int H U + (1/6) H_x U_x   (broken derivatives)
//   energy   E = (1/2) int H^2 + (1+H) U^2
struct InvariantRecord {
  double t = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double impulse = 0.0;
  double energy = 0.0;
};

// All integrals use the rule exact for degree 3r, so conservation errors
// reflect the scheme, not the quadrature.
InvariantRecord invariants(const Coeffs& H, const Coeffs& U, double t);

// Coefficients of the cubic energy increment: for an update direction
// (d_eta, d_u) and a = gamma*dt,
//   E(H + a d_eta, U + a d_u) - E(H, U) = (1/2) (Gamma a + B a^2 + A a^3).
struct RelaxationCoefficients {
  double A = 0.0;
  double B = 0.0;
  double Gamma = 0.0;
};

RelaxationCoefficients relaxation_coefficients(const Coeffs& H, const Coeffs& U,
                                               const Coeffs& d_eta,
                                               const Coeffs& d_u);

// Quadrature-point samples of a state and an update direction, for repeated
// energy-difference evaluations during the relaxation root solve.
class EnergyProbe {
 public:
  EnergyProbe(const Coeffs& H, const Coeffs& U, const Coeffs& d_eta,
              const Coeffs& d_u);

  double energy() const { return energy0_; }

  // E(H + a d_eta, U + a d_u) - E(H, U), expanded pointwise so the
  // difference is exact in real arithmetic (no large cancellation).
  double energy_increment(double a) const;

 private:
  std::vector<double> w_, h_, u_, de_, du_;
  double energy0_ = 0.0;
};

}  // namespace bbm
