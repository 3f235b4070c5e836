#include "bbm/linalg.hpp"

#include <vector>

namespace bbm {

SaddleOperator make_saddle(const BandedMatrix& mass_primary,
                           const BandedMatrix& coupling,
                           const BandedMatrix& mass_auxiliary) {
  const int n1 = mass_primary.rows();
  const int n2 = mass_auxiliary.rows();
  if (coupling.rows() != n1 || coupling.cols() != n2)
    throw UsageError("make_saddle: block dimensions do not match");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(size_t(mass_primary.sparse().nonZeros()) +
                2 * coupling.sparse().nonZeros() +
                mass_auxiliary.sparse().nonZeros());
  const double c = 1.0 / 6.0;

  for (int k = 0; k < mass_primary.sparse().outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(mass_primary.sparse(), k); it; ++it)
      trips.emplace_back(int(it.row()), int(it.col()), it.value());
  for (int k = 0; k < coupling.sparse().outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(coupling.sparse(), k); it; ++it) {
      trips.emplace_back(int(it.row()), n1 + int(it.col()), c * it.value());
      trips.emplace_back(n1 + int(it.col()), int(it.row()), c * it.value());
    }
  for (int k = 0; k < mass_auxiliary.sparse().outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(mass_auxiliary.sparse(), k); it; ++it)
      trips.emplace_back(n1 + int(it.row()), n1 + int(it.col()), -c * it.value());

  SaddleOperator op;
  op.n_primary = n1;
  op.n_auxiliary = n2;
  op.matrix.resize(n1 + n2, n1 + n2);
  op.matrix.setFromTriplets(trips.begin(), trips.end());
  op.matrix.makeCompressed();
  return op;
}

FactoredOperator factor(const Eigen::SparseMatrix<double>& matrix) {
  if (matrix.rows() != matrix.cols())
    throw UsageError("factor: matrix must be square");
  FactoredOperator f;
  f.dimension_ = int(matrix.rows());
  f.solver_ = std::make_shared<FactoredOperator::SolverType>();
  f.solver_->compute(matrix);
  if (f.solver_->info() != Eigen::Success)
    throw FactorizationError("factor: sparse LU failed (singular pivot)");
  return f;
}

FactoredOperator factor(const BandedMatrix& matrix) { return factor(matrix.sparse()); }

FactoredOperator factor(const SaddleOperator& op) { return factor(op.matrix); }

Eigen::VectorXd solve(const FactoredOperator& f, const Eigen::VectorXd& rhs) {
  if (!f.solver_) throw UsageError("solve: operator not factored");
  if (rhs.size() != f.dimension_) throw UsageError("solve: dimension mismatch");
  return f.solver_->solve(rhs);
}

}  // namespace bbm
