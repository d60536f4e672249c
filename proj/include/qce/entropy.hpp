#ifndef QCE_ENTROPY_HPP
#define QCE_ENTROPY_HPP

#include "qce/linalg.hpp"

namespace qce {

// Entropy in bits, or a distinguished +infinity (never a float sentinel, so
// inequality checks can branch on it exactly).
class EntropyValue {
public:
  static EntropyValue finite(double bits);
  static EntropyValue infinity();

  bool is_infinite() const { return infinite_; }
  double bits() const;

private:
  EntropyValue(double bits, bool infinite) : bits_(bits), infinite_(infinite) {}
  double bits_;
  bool infinite_;
};

// -sum p log2 p with 0 log 0 := 0.
EntropyValue shannon_entropy(const ProbabilityVector& p);

// -Tr(rho log2 rho).
EntropyValue von_neumann_entropy(const DensityMatrix& rho);

// Umegaki relative entropy Tr[sigma (log2 sigma - log2 rho)], computed in
// the eigenbasis of rho on the support of rho; +infinity when sigma carries
// mass outside that support (eigenvalue cut 1e-10).
EntropyValue relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho);

// Shared kernel: -sum_i (w_i/norm) log2 (w_i/norm) over w_i > 0, with small
// negative eigenvalues clamped to zero.
double entropy_of_spectrum(const RealVector& w, double norm = 1.0);

}  // namespace qce

#endif
