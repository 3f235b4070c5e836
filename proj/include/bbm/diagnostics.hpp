#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bbm/functionals.hpp"
#include "bbm/semidisc.hpp"
#include "bbm/waves.hpp"

namespace bbm {

// L2 (s = 0) or H1 (s = 1) distance between a FEM function and a closed-form
// field, by cellwise quadrature exact to degree 2r+6.
double norm_error(const Coeffs& c, const std::function<double(double)>& exact,
                  const std::function<double(double)>& exact_deriv, int s);

// sqrt(|H - eta|^2 + |W - eta_x|^2) in L2, with W the evolved derivative
// approximation rather than the broken derivative of H.
double modified_h1_error(const Coeffs& H, const Coeffs& W,
                         const std::function<double(double)>& exact,
                         const std::function<double(double)>& exact_deriv);

// rate_k = ln(e_{k-1}/e_k) / ln(dx_{k-1}/dx_k); absent where an error is
// nonpositive.  One entry per consecutive pair.
std::vector<std::optional<double>> convergence_rates(
    const std::vector<double>& errors, const std::vector<double>& dxs);

// Peak location of a solitary pulse: bisection on the derivative of the
// evaluated function over a bracket of the given length around
// window_center, tolerance 1e-10.  Degree-1 functions have no interior
// derivative root, so the node of maximal value inside the window is
// returned instead.  Coordinates are unwrapped: on periodic domains the
// result stays near window_center even past the domain edge.
double track_peak(const Coeffs& H, double window_center, double window);

struct WaveTrackRecord {
  double t = 0.0;
  double x_star = 0.0;
  double E_amp = 0.0;
  double E_phase = 0.0;
  double E_shape = 0.0;
};

// Amplitude, phase and shape errors of a propagating solitary wave at time
// t against the translated reference profile (peak initially at x0, nominal
// speed c_s, initial peak height H0).  The shape error minimizes
// |H - ref(. - x0 - c_s s)| over s near t, by bisection on the derivative of
// the squared distance; its integrals use a 3-node rule per cell.
WaveTrackRecord wave_errors(const Coeffs& H, double t, const WaveProfile& ref,
                            double c_s, double H0, double x0,
                            double window_center);

struct DriftReport {
  double mass = 0.0, momentum = 0.0, impulse = 0.0, energy = 0.0;
};

// E_K = max_n |K(t^n) - K(t^0)| over the series, per invariant.
DriftReport drift_report(const std::vector<InvariantRecord>& series);

// Invariants the conservative scheme keeps to rounding for the given
// boundary conditions: mass and energy always, momentum only periodically.
// The impulse functional is monitored but not conserved.
struct ConservedSet {
  bool mass = true, momentum = false, impulse = false, energy = true;
};

ConservedSet conserved_invariants(BcKind bc);

}  // namespace bbm
