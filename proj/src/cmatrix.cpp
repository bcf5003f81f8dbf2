#include "jacobi/cmatrix.hpp"

#include <cmath>
#include <limits>

namespace jacobi {

CMat mat_mul(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: inner dimensions disagree (" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
  }
  return a * b;
}

namespace {

Eigen::PartialPivLU<CMat> checked_lu(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("lu_inverse_det: matrix is not square");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw SingularMatrixError("lu_inverse_det: zero matrix");
  }
  Eigen::PartialPivLU<CMat> lu(a);
  const auto pivots = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < pivots.size(); ++i) {
    if (std::abs(pivots(i)) < kSingularPivotTol * scale) {
      throw SingularMatrixError("lu_inverse_det: pivot below tolerance");
    }
  }
  return lu;
}

}  // namespace

InverseDet lu_inverse_det(const CMat& a) {
  auto lu = checked_lu(a);
  return {lu.inverse(), lu.determinant()};
}

CMat inverse(const CMat& a) { return checked_lu(a).inverse(); }

Complex determinant(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("determinant: matrix is not square");
  }
  return Eigen::PartialPivLU<CMat>(a).determinant();
}

CMat hermitian_sqrt(const CMat& w) {
  if (w.rows() != w.cols()) {
    throw DimensionError("hermitian_sqrt: matrix is not square");
  }
  if (!is_hermitian(w)) {
    throw NotHermitianError("hermitian_sqrt: matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMat> eig(w);
  const Eigen::VectorXd vals = eig.eigenvalues();
  const double max_eig = vals.maxCoeff();
  if (max_eig <= 0.0 || vals.minCoeff() <= kPositiveFloor * max_eig) {
    throw NotPositiveError("hermitian_sqrt: matrix is not positive definite");
  }
  return eig.eigenvectors() * vals.cwiseSqrt().asDiagonal() * eig.eigenvectors().adjoint();
}

double op_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  if (a.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> eig(CMat(a.adjoint() * a));
  const double top = eig.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

double cond_estimate(const CMat& a) {
  try {
    return op_norm(a) * op_norm(inverse(a));
  } catch (const SingularMatrixError&) {
    return std::numeric_limits<double>::infinity();
  }
}

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - CMat(a.adjoint())).cwiseAbs().maxCoeff() <= tol * scale;
}

Complex zpow(Complex z, long long n) {
  if (n == 0) return Complex(1.0, 0.0);
  Complex base = n > 0 ? z : Complex(1.0, 0.0) / z;
  unsigned long long e = n > 0 ? static_cast<unsigned long long>(n)
                               : static_cast<unsigned long long>(-(n + 1)) + 1ull;
  Complex acc(1.0, 0.0);
  while (e > 0) {
    if (e & 1ull) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace jacobi
