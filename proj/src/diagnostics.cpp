#include "bbm/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace bbm {

namespace {

// squared L2 distance of a FEM function to a closed-form field (and, for
// with_deriv, of the broken derivative to the field's derivative)
void squared_errors(const Coeffs& c, const std::function<double(double)>& exact,
                    const std::function<double(double)>& exact_deriv,
                    bool with_deriv, double* e0_sq, double* e1_sq) {
  const FemSpace& sp = *c.space;
  const double dx = sp.mesh().dx;
  const QuadratureRule rule = quadrature_for(2 * sp.degree() + 6);
  std::vector<double> vals, ders;
  eval_at_quad(c, rule, &vals, with_deriv ? &ders : nullptr);

  double s0 = 0.0, s1 = 0.0;
  size_t idx = 0;
  for (int cell = 0; cell < sp.mesh().n_cells; ++cell) {
    const double x0 = sp.mesh().node(cell);
    for (int q = 0; q < rule.n_points; ++q, ++idx) {
      const double x = x0 + rule.ref_nodes[q] * dx;
      const double w = rule.weights[q] * dx;
      const double d = vals[idx] - exact(x);
      s0 += w * d * d;
      if (with_deriv) {
        const double dd = ders[idx] - exact_deriv(x);
        s1 += w * dd * dd;
      }
    }
  }
  *e0_sq = s0;
  if (e1_sq) *e1_sq = s1;
}

}  // namespace

double norm_error(const Coeffs& c, const std::function<double(double)>& exact,
                  const std::function<double(double)>& exact_deriv, int s) {
  if (s != 0 && s != 1) throw UsageError("norm_error: s must be 0 or 1");
  double e0 = 0.0, e1 = 0.0;
  squared_errors(c, exact, exact_deriv, s == 1, &e0, &e1);
  return std::sqrt(e0 + e1);
}

double modified_h1_error(const Coeffs& H, const Coeffs& W,
                         const std::function<double(double)>& exact,
                         const std::function<double(double)>& exact_deriv) {
  double a = 0.0, b = 0.0;
  squared_errors(H, exact, exact, false, &a, nullptr);
  squared_errors(W, exact_deriv, exact_deriv, false, &b, nullptr);
  return std::sqrt(a + b);
}

std::vector<std::optional<double>> convergence_rates(
    const std::vector<double>& errors, const std::vector<double>& dxs) {
  if (errors.size() != dxs.size())
    throw UsageError("convergence_rates: mismatched lengths");
  std::vector<std::optional<double>> rates;
  for (size_t k = 1; k < errors.size(); ++k) {
    if (dxs[k] >= dxs[k - 1])
      throw UsageError("convergence_rates: dx values must decrease");
    if (errors[k] <= 0.0 || errors[k - 1] <= 0.0) {
      rates.push_back(std::nullopt);
    } else {
      rates.push_back(std::log(errors[k - 1] / errors[k]) /
                      std::log(dxs[k - 1] / dxs[k]));
    }
  }
  return rates;
}

double track_peak(const Coeffs& H, double window_center, double window) {
  const FemSpace& sp = *H.space;
  const bool periodic = sp.bc() == BoundaryVariant::Periodic;
  const double period = sp.mesh().b - sp.mesh().a;

  if (sp.degree() == 1) {
    // nodal argmax inside the window, reported in unwrapped coordinates
    double best_v = -std::numeric_limits<double>::infinity();
    double best_x = window_center;
    for (int i = 0; i < sp.dof_count(); ++i) {
      double x = sp.node_coords()[i];
      if (periodic) x += period * std::round((window_center - x) / period);
      if (std::abs(x - window_center) > 0.5 * window) continue;
      if (H.values[i] > best_v) {
        best_v = H.values[i];
        best_x = x;
      }
    }
    if (best_v == -std::numeric_limits<double>::infinity())
      throw NumericalError("peak tracking lost: no node inside the window");
    return best_x;
  }

  auto slope = [&H](double x) { return evaluate(H, x).second; };
  double a = window_center - 0.5 * window;
  double b = window_center + 0.5 * window;
  double fa = slope(a), fb = slope(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw NumericalError("peak tracking lost: no extremum inside the window");
  while (b - a > 1e-10) {
    const double m = 0.5 * (a + b);
    const double fm = slope(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

namespace {

// integrals over the domain of H with a 3-node rule per cell
struct ShapeIntegrals {
  double dist_sq;   // int (H - ref_s)^2
  double slope;     // int (H - ref_s) * d/ds ref_s  (up to the factor -2)
  double ref_sq;    // int ref_s^2
};

ShapeIntegrals shape_integrals(const Coeffs& H, const WaveProfile& ref_s) {
  const FemSpace& sp = *H.space;
  const double dx = sp.mesh().dx;
  static const QuadratureRule rule = gauss_legendre(3);
  std::vector<double> vals;
  eval_at_quad(H, rule, &vals);

  ShapeIntegrals out{0.0, 0.0, 0.0};
  size_t idx = 0;
  for (int cell = 0; cell < sp.mesh().n_cells; ++cell) {
    const double x0 = sp.mesh().node(cell);
    for (int q = 0; q < rule.n_points; ++q, ++idx) {
      const double x = x0 + rule.ref_nodes[q] * dx;
      const double w = rule.weights[q] * dx;
      const double r = ref_s.value(x);
      const double d = vals[idx] - r;
      out.dist_sq += w * d * d;
      out.slope += w * d * ref_s.deriv(x);
      out.ref_sq += w * r * r;
    }
  }
  return out;
}

}  // namespace

WaveTrackRecord wave_errors(const Coeffs& H, double t, const WaveProfile& ref,
                            double c_s, double H0, double x0,
                            double window_center) {
  const FemSpace& sp = *H.space;
  const double dx = sp.mesh().dx;

  WaveTrackRecord rec;
  rec.t = t;
  rec.x_star = track_peak(H, window_center, 10.0 * dx);
  rec.E_amp = std::abs(evaluate(H, rec.x_star).first - H0) / std::abs(H0);
  rec.E_phase = std::abs(rec.x_star - x0 - c_s * t);

  // shape error: minimize |H - ref(. - x0 - c_s s)| over s near t.
  // d(dist^2)/ds has the sign of the `slope` integral (factor 2 c_s > 0).
  auto slope_at = [&](double s) {
    return shape_integrals(H, ref.with_shift(x0 + c_s * s)).slope;
  };
  double sa = t - 10.0 * dx / c_s;
  double sb = t + 10.0 * dx / c_s;
  double fa = slope_at(sa), fb = slope_at(sb);
  double s_star;
  if ((fa > 0.0) == (fb > 0.0) && fa != 0.0 && fb != 0.0) {
    // no interior critical point resolved; keep the better endpoint
    const double da = shape_integrals(H, ref.with_shift(x0 + c_s * sa)).dist_sq;
    const double db = shape_integrals(H, ref.with_shift(x0 + c_s * sb)).dist_sq;
    s_star = da <= db ? sa : sb;
  } else {
    while (sb - sa > 1e-10) {
      const double m = 0.5 * (sa + sb);
      const double fm = slope_at(m);
      if (fm == 0.0) {
        sa = sb = m;
        break;
      }
      if ((fm > 0.0) == (fa > 0.0)) {
        sa = m;
        fa = fm;
      } else {
        sb = m;
      }
    }
    s_star = 0.5 * (sa + sb);
  }
  const ShapeIntegrals best = shape_integrals(H, ref.with_shift(x0 + c_s * s_star));
  rec.E_shape = std::sqrt(best.dist_sq) / std::sqrt(best.ref_sq);
  return rec;
}

DriftReport drift_report(const std::vector<InvariantRecord>& series) {
  if (series.empty()) throw UsageError("drift_report: empty series");
  const InvariantRecord& first = series.front();
  DriftReport d;
  for (const InvariantRecord& r : series) {
    d.mass = std::max(d.mass, std::abs(r.mass - first.mass));
    d.momentum = std::max(d.momentum, std::abs(r.momentum - first.momentum));
    d.impulse = std::max(d.impulse, std::abs(r.impulse - first.impulse));
    d.energy = std::max(d.energy, std::abs(r.energy - first.energy));
  }
  return d;
}

ConservedSet conserved_invariants(BcKind bc) {
  ConservedSet s;
  s.momentum = (bc == BcKind::Periodic);
  return s;
}

}  // namespace bbm
