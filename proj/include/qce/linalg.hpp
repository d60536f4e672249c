#ifndef QCE_LINALG_HPP
#define QCE_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qce {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerances shared across the library. Entropies are in bits everywhere.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double psd = 1e-10;          // min eigenvalue >= -psd
inline constexpr double unitary = 1e-10;
inline constexpr double prob_sum = 1e-12;
inline constexpr double support = 1e-10;      // eigenvalue support cut for relative entropy
inline constexpr double completeness = 1e-10; // |sum A*A - I|
inline constexpr double choi_psd = 1e-9;      // Choi min eigenvalue >= -choi_psd
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Positive semidefinite, unit-trace state. Validates on construction and
// stores the Hermitian-symmetrized matrix.
class DensityMatrix {
public:
  explicit DensityMatrix(Matrix mat);
  static DensityMatrix pure(const Vector& psi);

  const Matrix& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

private:
  Matrix mat_;
};

class UnitaryMatrix {
public:
  explicit UnitaryMatrix(Matrix mat);

  const Matrix& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  Vector column(int j) const { return mat_.col(j); }

private:
  Matrix mat_;
};

// Nonnegative weights summing to one.
class ProbabilityVector {
public:
  explicit ProbabilityVector(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t j) const { return weights_[j]; }

private:
  std::vector<double> weights_;
};

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
// Symmetrizes as (H + H*)/2 before factorizing; rejects inputs that are
// not Hermitian within 1e-8.
std::pair<RealVector, Matrix> hermitian_eig(const Matrix& h);

Matrix kron(const Matrix& a, const Matrix& b);

enum class Subsystem { first, second };

// Partial trace of a (dim_first * dim_second) square matrix.
Matrix partial_trace(const Matrix& m, int dim_first, int dim_second, Subsystem keep);
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_first, int dim_second,
                            Subsystem keep);

// Leading eigenvector of a rank-one (pure) state.
Vector principal_vector(const DensityMatrix& rho);

bool is_prime(int n);

}  // namespace qce

#endif
