#include "qce/entropy.hpp"

#include <cmath>

namespace qce {

EntropyValue EntropyValue::finite(double bits) {
  if (bits < -1e-10) throw std::invalid_argument("EntropyValue: negative entropy");
  return EntropyValue(bits < 0.0 ? 0.0 : bits, false);
}

EntropyValue EntropyValue::infinity() { return EntropyValue(0.0, true); }

double EntropyValue::bits() const {
  if (infinite_) throw std::logic_error("EntropyValue: infinite value has no bits()");
  return bits_;
}

double entropy_of_spectrum(const RealVector& w, double norm) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double x = w(i) / norm;
    if (x < -1e-8) {
      throw std::invalid_argument("entropy_of_spectrum: eigenvalue below PSD tolerance");
    }
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h < 0.0 ? 0.0 : h;
}

EntropyValue shannon_entropy(const ProbabilityVector& p) {
  double h = 0.0;
  for (double x : p.weights()) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return EntropyValue::finite(h);
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  auto [w, v] = hermitian_eig(rho.mat());
  return EntropyValue::finite(entropy_of_spectrum(w));
}

EntropyValue relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  auto [w, v] = hermitian_eig(rho.mat());
  const int d = rho.dim();

  std::vector<int> support;
  support.reserve(d);
  for (int i = 0; i < d; ++i)
    if (w(i) > tol::support) support.push_back(i);

  Matrix rotated = v.adjoint() * sigma.mat() * v;
  double off_mass = 0.0;
  for (int i = 0; i < d; ++i) {
    bool on = w(i) > tol::support;
    if (!on) off_mass += rotated(i, i).real();
  }
  if (off_mass > tol::support) return EntropyValue::infinity();

  const int r = static_cast<int>(support.size());
  Matrix sig_r(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) sig_r(a, b) = rotated(support[a], support[b]);

  // Tr[sigma log2 sigma] from the compressed block's spectrum.
  Eigen::SelfAdjointEigenSolver<Matrix> es(sig_r, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("relative_entropy: eigensolver failed");
  }
  double tr_sig_log_sig = -entropy_of_spectrum(es.eigenvalues());

  double tr_sig_log_rho = 0.0;
  for (int a = 0; a < r; ++a) {
    tr_sig_log_rho += sig_r(a, a).real() * std::log2(w(support[a]));
  }

  double value = tr_sig_log_sig - tr_sig_log_rho;
  if (value < -1e-9) {
    throw std::runtime_error("relative_entropy: result below nonnegativity tolerance");
  }
  return EntropyValue::finite(value < 0.0 ? 0.0 : value);
}

}  // namespace qce
