#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "bbm/errors.hpp"

namespace bbm {

// ---------------------------------------------------------------------------
// Mesh and spaces
// ---------------------------------------------------------------------------

struct UniformMesh {
  double a = 0.0;
  double b = 1.0;
  int n_cells = 0;
  double dx = 0.0;

  // Node j computed directly from the endpoints, never accumulated.
  double node(int j) const { return a + j * dx; }
};

enum class BoundaryVariant { Free, ZeroEndpoint, Periodic };

const char* to_string(BoundaryVariant bc);

// Continuous piecewise-polynomial Lagrange space of degree r on a uniform
// mesh.  Local nodes are the r+1 equispaced points of each cell; DOFs are
// numbered left to right with shared cell-boundary nodes.
class FemSpace {
 public:
  FemSpace(UniformMesh mesh, int degree, BoundaryVariant bc);

  const UniformMesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  BoundaryVariant bc() const { return bc_; }
  int dof_count() const { return dof_count_; }
  const std::vector<double>& node_coords() const { return node_coords_; }

  // DOF of local node k (0..r) of cell `cell`; -1 for a constrained node.
  int local_to_dof(int cell, int k) const;

  // Physical coordinate of local node k of cell `cell`.
  double local_node_coord(int cell, int k) const;

  bool same_mesh(const FemSpace& other) const;

 private:
  UniformMesh mesh_;
  int degree_;
  BoundaryVariant bc_;
  int dof_count_;
  std::vector<double> node_coords_;
};

using SpacePtr = std::shared_ptr<const FemSpace>;

SpacePtr build_space(double a, double b, int n_cells, int degree,
                     BoundaryVariant bc);

// One FEM function: a DOF vector tied to its space.
struct Coeffs {
  SpacePtr space;
  Eigen::VectorXd values;

  Coeffs() = default;
  Coeffs(SpacePtr s, Eigen::VectorXd v) : space(std::move(s)), values(std::move(v)) {}
  explicit Coeffs(SpacePtr s)
      : space(std::move(s)), values(Eigen::VectorXd::Zero(space->dof_count())) {}
};

// Value and one-sided derivative of the represented function at x.  At
// interior cell boundaries the derivative of the left cell is used; at x=a
// that of the first cell.  Periodic spaces wrap x into [a,b) first.
std::pair<double, double> evaluate(const Coeffs& c, double x);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

// Gauss-Legendre rule on the reference cell [0,1]; exact for polynomials of
// degree <= 2n-1, weights sum to 1.
struct QuadratureRule {
  int n_points = 0;
  std::vector<double> ref_nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n_points);

// Smallest Gauss-Legendre rule exact for the given polynomial degree.
QuadratureRule quadrature_for(int max_poly_degree);

// Reference Lagrange basis of degree r tabulated at the points of a rule.
struct BasisTable {
  int degree = 0;
  Eigen::MatrixXd values;       // (r+1) x n_points
  Eigen::MatrixXd derivatives;  // d/dxi on the reference cell
};

BasisTable tabulate_basis(int degree, const QuadratureRule& rule);

// Reference shape function k of degree r and its xi-derivative at xi in [0,1].
double lagrange_shape(int degree, int k, double xi);
double lagrange_shape_derivative(int degree, int k, double xi);

// Values (and broken cellwise derivatives) of a FEM function at every
// quadrature point of every cell, cell-major.
void eval_at_quad(const Coeffs& c, const QuadratureRule& rule,
                  std::vector<double>* values,
                  std::vector<double>* derivatives = nullptr);

// ---------------------------------------------------------------------------
// Assembled matrices
// ---------------------------------------------------------------------------

// Sparse matrix with band structure (cyclic corner entries for periodic
// spaces).  Assembled via add(), then finalized; entry() and apply() work on
// the finalized matrix.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int rows, int cols, int bandwidth, bool periodic_wrap);

  void add(int i, int j, double v);
  void finalize();

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int bandwidth() const { return bandwidth_; }
  bool periodic_wrap() const { return periodic_wrap_; }

  double entry(int i, int j) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  const Eigen::SparseMatrix<double>& sparse() const;

 private:
  int rows_ = 0, cols_ = 0, bandwidth_ = 0;
  bool periodic_wrap_ = false;
  bool finalized_ = false;
  std::vector<Eigen::Triplet<double>> triplets_;
  Eigen::SparseMatrix<double> matrix_;
};

// Mass matrix M[i][j] = int phi_i phi_j dx; symmetric positive definite.
BandedMatrix assemble_mass(const FemSpace& space);

// Stiffness matrix S[i][j] = int phi_i' phi_j' dx; symmetric positive
// semidefinite, annihilates constants.
BandedMatrix assemble_stiffness(const FemSpace& space);

// Coupling matrix G[i][j] = int chi_i' psi_j dx between two spaces on the
// same mesh and degree (row basis differentiated).
BandedMatrix assemble_coupling(const FemSpace& row_space,
                               const FemSpace& col_space);

// Cross mass matrix X[i][j] = int chi_i psi_j dx between two spaces on the
// same mesh and degree.
BandedMatrix assemble_cross_mass(const FemSpace& row_space,
                                 const FemSpace& col_space);

// Load vector b_i = int f phi_i dx with the given rule applied cellwise.
Eigen::VectorXd load_vector(const FemSpace& space,
                            const std::function<double(double)>& f,
                            const QuadratureRule& rule);

// Loads b_i = int g phi_i dx and b_i = int g phi_i' dx from samples of g at
// the quadrature points of every cell (cell-major, as eval_at_quad).
Eigen::VectorXd load_from_quad(const FemSpace& space, const QuadratureRule& rule,
                               const std::vector<double>& g);
Eigen::VectorXd load_deriv_from_quad(const FemSpace& space,
                                     const QuadratureRule& rule,
                                     const std::vector<double>& g);

// Rule used for loads with transcendental integrands.
QuadratureRule transcendental_rule(int degree);

// L2-projection onto the space: solves M c = (f, phi_i).
Coeffs l2_project(const SpacePtr& space, const std::function<double(double)>& f);

// Nodal interpolation of a pointwise function.
Coeffs interpolate(const SpacePtr& space, const std::function<double(double)>& f);

}  // namespace bbm
