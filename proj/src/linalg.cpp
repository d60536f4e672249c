#include "qce/linalg.hpp"

#include <cmath>

namespace qce {

DensityMatrix::DensityMatrix(Matrix mat) {
  if (mat.rows() != mat.cols() || mat.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
  }
  if (max_abs(mat - mat.adjoint()) > tol::hermitian) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(mat.trace().real() - 1.0) > tol::trace_one ||
      std::abs(mat.trace().imag()) > tol::trace_one) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  mat_ = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("DensityMatrix: eigenvalue check failed");
  }
  if (es.eigenvalues().minCoeff() < -tol::psd) {
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  double n = psi.norm();
  if (n < 1e-12) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  Vector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

UnitaryMatrix::UnitaryMatrix(Matrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw std::invalid_argument("UnitaryMatrix: matrix must be square and nonempty");
  }
  Matrix gram = mat_ * mat_.adjoint();
  gram -= Matrix::Identity(mat_.rows(), mat_.cols());
  if (max_abs(gram) > tol::unitary) {
    throw std::invalid_argument("UnitaryMatrix: matrix is not unitary");
  }
}

ProbabilityVector::ProbabilityVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw std::invalid_argument("ProbabilityVector: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::prob_sum) {
    throw std::invalid_argument("ProbabilityVector: weights do not sum to 1");
  }
}

std::pair<RealVector, Matrix> hermitian_eig(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("hermitian_eig: matrix must be square and nonempty");
  }
  if (max_abs(h - h.adjoint()) > 1e-8) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }
  Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, int dim_first, int dim_second, Subsystem keep) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim_first) * dim_second;
  if (dim_first < 1 || dim_second < 1 || m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  if (keep == Subsystem::first) {
    Matrix out = Matrix::Zero(dim_first, dim_first);
    for (int i = 0; i < dim_first; ++i)
      for (int j = 0; j < dim_first; ++j)
        for (int k = 0; k < dim_second; ++k)
          out(i, j) += m(i * dim_second + k, j * dim_second + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_second, dim_second);
  for (int k = 0; k < dim_second; ++k)
    for (int l = 0; l < dim_second; ++l)
      for (int i = 0; i < dim_first; ++i)
        out(k, l) += m(i * dim_second + k, i * dim_second + l);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_first, int dim_second,
                            Subsystem keep) {
  return DensityMatrix(partial_trace(rho.mat(), dim_first, dim_second, keep));
}

Vector principal_vector(const DensityMatrix& rho) {
  auto [w, v] = hermitian_eig(rho.mat());
  return v.col(v.cols() - 1);
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace qce
