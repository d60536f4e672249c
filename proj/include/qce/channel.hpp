#ifndef QCE_CHANNEL_HPP
#define QCE_CHANNEL_HPP

#include "qce/linalg.hpp"
#include "qce/rng.hpp"

namespace qce {

struct CptpReport {
  double completeness_residual = 0.0;  // max|sum A*A - I|
  double choi_min_eigenvalue = 0.0;
  bool completeness_ok = false;
  bool positive_ok = false;
  bool ok = false;
};

// Completely positive trace preserving map in Kraus form,
// rho -> sum_i A_i rho A_i*. Kraus operators may be rectangular
// (dout x din). Validates completeness and Choi positivity on construction.
class KrausChannel {
public:
  explicit KrausChannel(std::vector<Matrix> kraus);
  static KrausChannel identity(int d);

  int input_dim() const { return din_; }
  int output_dim() const { return dout_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  // Linear action on an arbitrary (not necessarily unit-trace) matrix.
  Matrix apply_matrix(const Matrix& m) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

private:
  int din_;
  int dout_;
  std::vector<Matrix> kraus_;
};

// CPTP test on a candidate Kraus set (which need not pass construction).
CptpReport is_cptp(const std::vector<Matrix>& kraus);
CptpReport is_cptp(const KrausChannel& phi);

KrausChannel channel_tensor(const KrausChannel& a, const KrausChannel& b);

// compose(phi, psi) acts as phi after psi.
KrausChannel channel_compose(const KrausChannel& phi, const KrausChannel& psi);

// Unnormalized Choi matrix sum_{ij} |i><j| (x) Phi(|i><j|), input index first.
Matrix choi(const KrausChannel& phi);

// Kraus set from a PSD Choi matrix (eigendecomposition, eigenvalue cut 1e-12).
KrausChannel channel_from_choi(const Matrix& choi_matrix, int din, int dout);

DensityMatrix channel_apply(const KrausChannel& phi, const DensityMatrix& rho);

// Random CPTP map: Haar isometry into an environment of dimension d^2,
// Kraus operators by environment slicing.
KrausChannel sample_cptp_channel(int d, const RngSeed& seed);

}  // namespace qce

#endif
