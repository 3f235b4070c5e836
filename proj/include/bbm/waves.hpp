#pragma once

#include <functional>
#include <vector>

#include "bbm/semidisc.hpp"

namespace bbm {

// ---------------------------------------------------------------------------
// Closed-form travelling wave (speed 5/2, rightward for direction = +1)
// ---------------------------------------------------------------------------

struct ExactTravellingWave {
  int direction = +1;  // +1 rightward, -1 leftward

  static constexpr double speed = 2.5;

  double eta(double x, double t) const;
  double u(double x, double t) const;
  double eta_x(double x, double t) const;
  double u_x(double x, double t) const;
};

// ---------------------------------------------------------------------------
// Manufactured solutions with their source terms
// ---------------------------------------------------------------------------

// Closed-form fields on [0,1] satisfying the forced system; the reflective
// variant obeys eta_x = 0 and u = 0 at both endpoints, the periodic variant
// is 1-periodic in x.
struct ManufacturedCase {
  BcKind bc = BcKind::Reflective;
  std::function<double(double, double)> eta, eta_x, u, u_x;  // (x, t)
  Forcing forcing;
};

ManufacturedCase manufactured_case(BcKind bc);

// Max deviation of the case's forcing from a centered finite-difference
// evaluation of the PDE residual at n random points (x, t); used as an
// independent check of the hand-derived source terms.
double forcing_fd_deviation(const ManufacturedCase& mc, int n_points,
                            double fd_step, unsigned seed = 12345);

// ---------------------------------------------------------------------------
// Solitary-wave generation by stabilized fixed-point iteration
// ---------------------------------------------------------------------------

struct SolitaryGuess {
  std::function<double(double)> eta, u;
  double amplitude = 0.0;  // c_s^2 - 1
};

// sech^2 seed centered at `center`: eta = A sech^2(lambda x'),
// u = c_s eta / (1 + eta), with A = c_s^2 - 1, lambda = sqrt(3A/4).
SolitaryGuess solitary_guess(double c_s, double center);

struct PetviashviliConfig {
  double exponent = 2.0;
  double tol = 1e-10;
  int max_iter = 500;
  double center = 0.0;  // peak location of the seed
};

struct TravellingWave {
  double c_s = 0.0;
  Coeffs eta, u;      // eta in the H-space, u in the U-space
  Coeffs eta_x, u_x;  // projected broken derivatives, on the W/V spaces
  double amplitude = 0.0;  // refined peak height of eta
  double peak_x = 0.0;
  std::vector<double> residual_history;
  int iterations = 0;
};

// Solves the travelling-wave system in weak form by the stabilized
// fixed-point iteration w <- L^{-1} M^gamma N(w), where L is the linear
// dispersive operator at speed c_s and N the quadratic nonlinearity.
TravellingWave petviashvili_solve(double a, double b, int n_cells, int degree,
                                  BcKind bc, double c_s,
                                  const PetviashviliConfig& config = {});

// ---------------------------------------------------------------------------
// Profile evaluation and transfer
// ---------------------------------------------------------------------------

// Pointwise view of one generated field translated so the point `origin` of
// the stored field lands at `shift`, zero outside the generation interval
// (solitary profiles decay to rounding level well inside it).  With a
// positive `period` the argument is reduced to its minimal image first, so
// the profile can be compared against runs on a periodic domain of that
// length.
class WaveProfile {
 public:
  WaveProfile() = default;
  WaveProfile(Coeffs field, double shift = 0.0, double scale = 1.0,
              double period = 0.0, double origin = 0.0);

  double value(double x) const;
  double deriv(double x) const;

  double shift() const { return shift_; }
  WaveProfile with_shift(double s) const;

 private:
  Coeffs field_;
  double a_ = 0.0, b_ = 0.0;
  double shift_ = 0.0, scale_ = 1.0, period_ = 0.0, origin_ = 0.0;
};

// Initial state for `op` from one or more translated wave profiles, by nodal
// interpolation of the pointwise sums of all four fields.  `center` is the
// target peak location of the copy.
struct PlacedWave {
  const TravellingWave* wave = nullptr;
  double center = 0.0;
  double u_sign = 1.0;  // -1 for a leftward-travelling copy
};

MixedState superpose(const SemidiscOperator& op,
                     const std::vector<PlacedWave>& waves);

}  // namespace bbm
