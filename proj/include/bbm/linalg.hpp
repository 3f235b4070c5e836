#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "bbm/mesh_fem.hpp"

namespace bbm {

// 2x2-block symmetric indefinite operator
//   [ M_alpha      (1/6) G   ]
//   [ (1/6) G^T  -(1/6) M_beta ]
// with M_alpha, M_beta mass matrices of the paired spaces and G the
// derivative coupling.  Nonsingular: the Schur complement is negative
// definite whenever the mass blocks are SPD.
struct SaddleOperator {
  Eigen::SparseMatrix<double> matrix;
  int n_primary = 0;    // size of the M_alpha block
  int n_auxiliary = 0;  // size of the M_beta block
};

SaddleOperator make_saddle(const BandedMatrix& mass_primary,
                           const BandedMatrix& coupling,
                           const BandedMatrix& mass_auxiliary);

// Reusable sparse LU factorization; deterministic direct solves only.
class FactoredOperator {
 public:
  using SolverType = Eigen::SparseLU<Eigen::SparseMatrix<double>,
                                     Eigen::COLAMDOrdering<int>>;

  FactoredOperator() = default;
  int dimension() const { return dimension_; }

  friend FactoredOperator factor(const Eigen::SparseMatrix<double>& matrix);
  friend Eigen::VectorXd solve(const FactoredOperator& f, const Eigen::VectorXd& rhs);

 private:
  std::shared_ptr<SolverType> solver_;
  int dimension_ = 0;
};

FactoredOperator factor(const Eigen::SparseMatrix<double>& matrix);
FactoredOperator factor(const BandedMatrix& matrix);
FactoredOperator factor(const SaddleOperator& op);

Eigen::VectorXd solve(const FactoredOperator& f, const Eigen::VectorXd& rhs);

}  // namespace bbm
