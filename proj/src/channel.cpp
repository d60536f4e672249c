#include "qce/channel.hpp"

#include <cmath>

namespace qce {

namespace {

Matrix choi_of_kraus(const std::vector<Matrix>& kraus, int din, int dout) {
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(din) * dout,
                          static_cast<Eigen::Index>(din) * dout);
  for (const Matrix& a : kraus) {
    // vec with input index first: v[(i)*dout + r] = A(r, i)
    Vector v(static_cast<Eigen::Index>(din) * dout);
    for (int i = 0; i < din; ++i)
      for (int r = 0; r < dout; ++r) v(i * dout + r) = a(r, i);
    c += v * v.adjoint();
  }
  return c;
}

CptpReport cptp_report(const std::vector<Matrix>& kraus, int din, int dout) {
  CptpReport rep;
  Matrix gram = Matrix::Zero(din, din);
  for (const Matrix& a : kraus) gram += a.adjoint() * a;
  gram -= Matrix::Identity(din, din);
  rep.completeness_residual = max_abs(gram);
  rep.completeness_ok = rep.completeness_residual <= tol::completeness;

  Matrix c = choi_of_kraus(kraus, din, dout);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.adjoint()),
                                           Eigen::EigenvaluesOnly);
  rep.choi_min_eigenvalue = es.eigenvalues().minCoeff();
  rep.positive_ok = rep.choi_min_eigenvalue >= -tol::choi_psd;
  rep.ok = rep.completeness_ok && rep.positive_ok;
  return rep;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("KrausChannel: empty Kraus set");
  dout_ = static_cast<int>(kraus_.front().rows());
  din_ = static_cast<int>(kraus_.front().cols());
  if (din_ == 0 || dout_ == 0) {
    throw std::invalid_argument("KrausChannel: empty Kraus operator");
  }
  for (const Matrix& a : kraus_) {
    if (a.rows() != dout_ || a.cols() != din_) {
      throw std::invalid_argument("KrausChannel: inconsistent Kraus dimensions");
    }
  }
  CptpReport rep = cptp_report(kraus_, din_, dout_);
  if (!rep.completeness_ok) {
    throw std::invalid_argument("KrausChannel: Kraus set is not trace preserving");
  }
  if (!rep.positive_ok) {
    throw std::invalid_argument("KrausChannel: Choi matrix is not positive semidefinite");
  }
}

KrausChannel KrausChannel::identity(int d) {
  if (d < 1) throw std::invalid_argument("KrausChannel::identity: d must be >= 1");
  return KrausChannel({Matrix::Identity(d, d)});
}

Matrix KrausChannel::apply_matrix(const Matrix& m) const {
  if (m.rows() != din_ || m.cols() != din_) {
    throw std::invalid_argument("KrausChannel: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(dout_, dout_);
  for (const Matrix& a : kraus_) out += a * m * a.adjoint();
  return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix(apply_matrix(rho.mat()));
}

CptpReport is_cptp(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("is_cptp: empty Kraus set");
  int dout = static_cast<int>(kraus.front().rows());
  int din = static_cast<int>(kraus.front().cols());
  for (const Matrix& a : kraus) {
    if (a.rows() != dout || a.cols() != din) {
      throw std::invalid_argument("is_cptp: inconsistent Kraus dimensions");
    }
  }
  return cptp_report(kraus, din, dout);
}

CptpReport is_cptp(const KrausChannel& phi) { return is_cptp(phi.kraus()); }

KrausChannel channel_tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<Matrix> ops;
  ops.reserve(a.kraus().size() * b.kraus().size());
  for (const Matrix& x : a.kraus())
    for (const Matrix& y : b.kraus()) ops.push_back(kron(x, y));
  return KrausChannel(std::move(ops));
}

KrausChannel channel_compose(const KrausChannel& phi, const KrausChannel& psi) {
  if (phi.input_dim() != psi.output_dim()) {
    throw std::invalid_argument("channel_compose: dimension mismatch");
  }
  std::vector<Matrix> ops;
  ops.reserve(phi.kraus().size() * psi.kraus().size());
  for (const Matrix& x : phi.kraus())
    for (const Matrix& y : psi.kraus()) ops.push_back(x * y);
  return KrausChannel(std::move(ops));
}

Matrix choi(const KrausChannel& phi) {
  return choi_of_kraus(phi.kraus(), phi.input_dim(), phi.output_dim());
}

KrausChannel channel_from_choi(const Matrix& choi_matrix, int din, int dout) {
  const Eigen::Index d = static_cast<Eigen::Index>(din) * dout;
  if (choi_matrix.rows() != d || choi_matrix.cols() != d) {
    throw std::invalid_argument("channel_from_choi: dimension mismatch");
  }
  auto [w, v] = hermitian_eig(choi_matrix);
  if (w.minCoeff() < -tol::choi_psd) {
    throw std::invalid_argument("channel_from_choi: Choi matrix is not PSD");
  }
  std::vector<Matrix> ops;
  for (Eigen::Index t = 0; t < w.size(); ++t) {
    if (w(t) <= 1e-12) continue;
    double s = std::sqrt(w(t));
    Matrix a(dout, din);
    for (int i = 0; i < din; ++i)
      for (int r = 0; r < dout; ++r) a(r, i) = s * v(i * dout + r, t);
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

DensityMatrix channel_apply(const KrausChannel& phi, const DensityMatrix& rho) {
  return phi.apply(rho);
}

KrausChannel sample_cptp_channel(int d, const RngSeed& seed) {
  if (d < 1) throw std::invalid_argument("sample_cptp_channel: d must be >= 1");
  const int denv = d * d;
  UnitaryMatrix u = sample_haar_unitary(d * denv, seed);
  // Isometry = first d columns; Kraus ops slice the environment index.
  std::vector<Matrix> ops(denv, Matrix(d, d));
  for (int e = 0; e < denv; ++e)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) ops[e](r, c) = u.mat()(r * denv + e, c);
  return KrausChannel(std::move(ops));
}

}  // namespace qce
