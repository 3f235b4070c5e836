#include "bbm/mesh_fem.hpp"

#include <algorithm>
#include <cmath>

#include "bbm/linalg.hpp"

namespace bbm {

const char* to_string(BoundaryVariant bc) {
  switch (bc) {
    case BoundaryVariant::Free: return "free";
    case BoundaryVariant::ZeroEndpoint: return "zero_endpoint";
    case BoundaryVariant::Periodic: return "periodic";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// FemSpace
// ---------------------------------------------------------------------------

FemSpace::FemSpace(UniformMesh mesh, int degree, BoundaryVariant bc)
    : mesh_(mesh), degree_(degree), bc_(bc) {
  if (degree < 1 || degree > 4)
    throw ConfigError("FemSpace: degree must be in 1..4");
  if (mesh.n_cells < 2) throw ConfigError("FemSpace: need at least 2 cells");
  if (!(mesh.b > mesh.a)) throw ConfigError("FemSpace: need b > a");

  const int global_nodes = degree * mesh.n_cells + 1;  // r*N + 1
  switch (bc) {
    case BoundaryVariant::Free: dof_count_ = global_nodes; break;
    case BoundaryVariant::ZeroEndpoint: dof_count_ = global_nodes - 2; break;
    case BoundaryVariant::Periodic: dof_count_ = global_nodes - 1; break;
  }

  node_coords_.resize(dof_count_);
  const double h = mesh.dx / degree;
  for (int d = 0; d < dof_count_; ++d) {
    const int g = (bc == BoundaryVariant::ZeroEndpoint) ? d + 1 : d;
    node_coords_[d] = mesh.a + g * h;
  }
}

int FemSpace::local_to_dof(int cell, int k) const {
  const int g = cell * degree_ + k;
  const int last = degree_ * mesh_.n_cells;
  switch (bc_) {
    case BoundaryVariant::Free:
      return g;
    case BoundaryVariant::ZeroEndpoint:
      return (g == 0 || g == last) ? -1 : g - 1;
    case BoundaryVariant::Periodic:
      return g % last;
  }
  return -1;
}

double FemSpace::local_node_coord(int cell, int k) const {
  return mesh_.a + cell * mesh_.dx + k * (mesh_.dx / degree_);
}

bool FemSpace::same_mesh(const FemSpace& other) const {
  return mesh_.a == other.mesh_.a && mesh_.b == other.mesh_.b &&
         mesh_.n_cells == other.mesh_.n_cells;
}

SpacePtr build_space(double a, double b, int n_cells, int degree,
                     BoundaryVariant bc) {
  if (!(b > a)) throw ConfigError("build_space: need b > a");
  if (n_cells < 2) throw ConfigError("build_space: need n_cells >= 2");
  UniformMesh mesh{a, b, n_cells, (b - a) / n_cells};
  return std::make_shared<FemSpace>(mesh, degree, bc);
}

// ---------------------------------------------------------------------------
// Reference Lagrange basis, equispaced nodes k/r on [0,1]
// ---------------------------------------------------------------------------

double lagrange_shape(int degree, int k, double xi) {
  double v = 1.0;
  for (int m = 0; m <= degree; ++m) {
    if (m == k) continue;
    v *= (xi * degree - m) / double(k - m);
  }
  return v;
}

double lagrange_shape_derivative(int degree, int k, double xi) {
  // d/dxi of prod_m (r*xi - m)/(k - m)
  double sum = 0.0;
  for (int j = 0; j <= degree; ++j) {
    if (j == k) continue;
    double term = double(degree) / double(k - j);
    for (int m = 0; m <= degree; ++m) {
      if (m == k || m == j) continue;
      term *= (xi * degree - m) / double(k - m);
    }
    sum += term;
  }
  return sum;
}

BasisTable tabulate_basis(int degree, const QuadratureRule& rule) {
  BasisTable t;
  t.degree = degree;
  t.values.resize(degree + 1, rule.n_points);
  t.derivatives.resize(degree + 1, rule.n_points);
  for (int k = 0; k <= degree; ++k)
    for (int q = 0; q < rule.n_points; ++q) {
      t.values(k, q) = lagrange_shape(degree, k, rule.ref_nodes[q]);
      t.derivatives(k, q) = lagrange_shape_derivative(degree, k, rule.ref_nodes[q]);
    }
  return t;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

QuadratureRule gauss_legendre(int n_points) {
  if (n_points < 1) throw ConfigError("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  rule.n_points = n_points;
  rule.ref_nodes.resize(n_points);
  rule.weights.resize(n_points);

  // Roots of P_n on [-1,1] by Newton iteration, then mapped to [0,1].
  const int n = n_points;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.ref_nodes[i] = 0.5 * (1.0 - x);  // descending roots -> ascending nodes
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  std::reverse(rule.ref_nodes.begin(), rule.ref_nodes.end());
  return rule;
}

QuadratureRule quadrature_for(int max_poly_degree) {
  if (max_poly_degree < 0) throw ConfigError("quadrature_for: degree >= 0");
  const int n = std::max(1, (max_poly_degree + 2) / 2);  // 2n-1 >= degree
  return gauss_legendre(n);
}

QuadratureRule transcendental_rule(int degree) {
  return gauss_legendre(std::max(2 * degree + 2, 6));
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

std::pair<double, double> evaluate(const Coeffs& c, double x) {
  const FemSpace& sp = *c.space;
  const UniformMesh& mesh = sp.mesh();
  if (sp.bc() == BoundaryVariant::Periodic) {
    const double len = mesh.b - mesh.a;
    x = mesh.a + std::fmod(std::fmod(x - mesh.a, len) + len, len);
  } else if (x < mesh.a - 1e-12 * (mesh.b - mesh.a) ||
             x > mesh.b + 1e-12 * (mesh.b - mesh.a)) {
    throw UsageError("evaluate: x outside [a,b]");
  }
  double s = (x - mesh.a) / mesh.dx;
  int cell = int(std::floor(s));
  // left-cell convention at interior nodes
  if (cell > 0 && s == double(cell)) cell -= 1;
  cell = std::clamp(cell, 0, mesh.n_cells - 1);
  const double xi = std::clamp(s - cell, 0.0, 1.0);

  const int r = sp.degree();
  double value = 0.0, deriv = 0.0;
  for (int k = 0; k <= r; ++k) {
    const int dof = sp.local_to_dof(cell, k);
    if (dof < 0) continue;
    const double ck = c.values[dof];
    value += ck * lagrange_shape(r, k, xi);
    deriv += ck * lagrange_shape_derivative(r, k, xi);
  }
  return {value, deriv / mesh.dx};
}

void eval_at_quad(const Coeffs& c, const QuadratureRule& rule,
                  std::vector<double>* values, std::vector<double>* derivatives) {
  const FemSpace& sp = *c.space;
  const int r = sp.degree();
  const int nq = rule.n_points;
  const int nc = sp.mesh().n_cells;
  const BasisTable tab = tabulate_basis(r, rule);
  const double inv_dx = 1.0 / sp.mesh().dx;

  if (values) values->assign(size_t(nc) * nq, 0.0);
  if (derivatives) derivatives->assign(size_t(nc) * nq, 0.0);
  for (int cell = 0; cell < nc; ++cell)
    for (int k = 0; k <= r; ++k) {
      const int dof = sp.local_to_dof(cell, k);
      if (dof < 0) continue;
      const double ck = c.values[dof];
      for (int q = 0; q < nq; ++q) {
        if (values) (*values)[size_t(cell) * nq + q] += ck * tab.values(k, q);
        if (derivatives)
          (*derivatives)[size_t(cell) * nq + q] += ck * tab.derivatives(k, q) * inv_dx;
      }
    }
}

// ---------------------------------------------------------------------------
// BandedMatrix
// ---------------------------------------------------------------------------

BandedMatrix::BandedMatrix(int rows, int cols, int bandwidth, bool periodic_wrap)
    : rows_(rows), cols_(cols), bandwidth_(bandwidth), periodic_wrap_(periodic_wrap) {}

void BandedMatrix::add(int i, int j, double v) {
  triplets_.emplace_back(i, j, v);
}

void BandedMatrix::finalize() {
  matrix_.resize(rows_, cols_);
  matrix_.setFromTriplets(triplets_.begin(), triplets_.end());
  matrix_.makeCompressed();
  triplets_.clear();
  finalized_ = true;
}

double BandedMatrix::entry(int i, int j) const {
  return matrix_.coeff(i, j);
}

Eigen::VectorXd BandedMatrix::apply(const Eigen::VectorXd& x) const {
  if (x.size() != cols_) throw UsageError("BandedMatrix::apply: dimension mismatch");
  return matrix_ * x;
}

const Eigen::SparseMatrix<double>& BandedMatrix::sparse() const { return matrix_; }

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

namespace {

// Generic two-space cellwise assembly of int D1[chi_i] * D2[psi_j] dx.
BandedMatrix assemble_bilinear(const FemSpace& row_space, const FemSpace& col_space,
                               bool d_row, bool d_col) {
  if (!row_space.same_mesh(col_space) || row_space.degree() != col_space.degree())
    throw ConfigError("assembly: spaces must share mesh and degree");
  const int r = row_space.degree();
  const double dx = row_space.mesh().dx;
  const QuadratureRule rule = quadrature_for(2 * r);
  const BasisTable tab = tabulate_basis(r, rule);

  const bool wrap = row_space.bc() == BoundaryVariant::Periodic ||
                    col_space.bc() == BoundaryVariant::Periodic;
  BandedMatrix out(row_space.dof_count(), col_space.dof_count(), r + 1, wrap);

  for (int cell = 0; cell < row_space.mesh().n_cells; ++cell)
    for (int k = 0; k <= r; ++k) {
      const int i = row_space.local_to_dof(cell, k);
      if (i < 0) continue;
      for (int l = 0; l <= r; ++l) {
        const int j = col_space.local_to_dof(cell, l);
        if (j < 0) continue;
        double acc = 0.0;
        for (int q = 0; q < rule.n_points; ++q) {
          const double fi = d_row ? tab.derivatives(k, q) : tab.values(k, q);
          const double fj = d_col ? tab.derivatives(l, q) : tab.values(l, q);
          acc += rule.weights[q] * fi * fj;
        }
        // each differentiated factor contributes 1/dx, the cell jacobian dx
        double scale = dx;
        if (d_row) scale /= dx;
        if (d_col) scale /= dx;
        out.add(i, j, acc * scale);
      }
    }
  out.finalize();
  return out;
}

}  // namespace

BandedMatrix assemble_mass(const FemSpace& space) {
  return assemble_bilinear(space, space, false, false);
}

BandedMatrix assemble_stiffness(const FemSpace& space) {
  return assemble_bilinear(space, space, true, true);
}

BandedMatrix assemble_coupling(const FemSpace& row_space, const FemSpace& col_space) {
  return assemble_bilinear(row_space, col_space, true, false);
}

BandedMatrix assemble_cross_mass(const FemSpace& row_space, const FemSpace& col_space) {
  return assemble_bilinear(row_space, col_space, false, false);
}

Eigen::VectorXd load_vector(const FemSpace& space,
                            const std::function<double(double)>& f,
                            const QuadratureRule& rule) {
  const int r = space.degree();
  const UniformMesh& mesh = space.mesh();
  const BasisTable tab = tabulate_basis(r, rule);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.dof_count());
  for (int cell = 0; cell < mesh.n_cells; ++cell) {
    const double x0 = mesh.node(cell);
    for (int q = 0; q < rule.n_points; ++q) {
      const double fx = f(x0 + rule.ref_nodes[q] * mesh.dx);
      const double w = rule.weights[q] * mesh.dx;
      for (int k = 0; k <= r; ++k) {
        const int i = space.local_to_dof(cell, k);
        if (i < 0) continue;
        b[i] += w * fx * tab.values(k, q);
      }
    }
  }
  return b;
}

namespace {

Eigen::VectorXd load_from_quad_impl(const FemSpace& space, const QuadratureRule& rule,
                                    const std::vector<double>& g, bool differentiate) {
  const int r = space.degree();
  const UniformMesh& mesh = space.mesh();
  if (g.size() != size_t(mesh.n_cells) * rule.n_points)
    throw UsageError("load_from_quad: sample count does not match rule");
  const BasisTable tab = tabulate_basis(r, rule);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.dof_count());
  // differentiated test functions: 1/dx from the chain rule cancels the jacobian
  const double scale = differentiate ? 1.0 : mesh.dx;
  for (int cell = 0; cell < mesh.n_cells; ++cell)
    for (int q = 0; q < rule.n_points; ++q) {
      const double w = rule.weights[q] * scale * g[size_t(cell) * rule.n_points + q];
      for (int k = 0; k <= r; ++k) {
        const int i = space.local_to_dof(cell, k);
        if (i < 0) continue;
        b[i] += w * (differentiate ? tab.derivatives(k, q) : tab.values(k, q));
      }
    }
  return b;
}

}  // namespace

Eigen::VectorXd load_from_quad(const FemSpace& space, const QuadratureRule& rule,
                               const std::vector<double>& g) {
  return load_from_quad_impl(space, rule, g, false);
}

Eigen::VectorXd load_deriv_from_quad(const FemSpace& space, const QuadratureRule& rule,
                                     const std::vector<double>& g) {
  return load_from_quad_impl(space, rule, g, true);
}

Coeffs l2_project(const SpacePtr& space, const std::function<double(double)>& f) {
  BandedMatrix mass = assemble_mass(*space);
  FactoredOperator op = factor(mass);
  Eigen::VectorXd b = load_vector(*space, f, transcendental_rule(space->degree()));
  return Coeffs(space, solve(op, b));
}

Coeffs interpolate(const SpacePtr& space, const std::function<double(double)>& f) {
  Eigen::VectorXd v(space->dof_count());
  for (int i = 0; i < space->dof_count(); ++i) v[i] = f(space->node_coords()[i]);
  return Coeffs(space, std::move(v));
}

}  // namespace bbm
