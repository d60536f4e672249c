#ifndef QCE_ENSEMBLE_HPP
#define QCE_ENSEMBLE_HPP

#include "qce/linalg.hpp"

namespace qce {

// Probability-weighted list of equal-dimension states. Members with weight
// below 1e-14 are dropped and the rest renormalized.
class Ensemble {
public:
  Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DensityMatrix>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  int dim() const { return states_.front().dim(); }

  DensityMatrix average() const;

private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> states_;
};

// Every pure-state ensemble averaging to rho comes from an isometry applied
// to the scaled eigenvectors: with rho = sum_i w_i v_i v_i* (w_i > 0) and a
// k x rank mixer M with orthonormal columns, member j is the normalization
// of u_j = sum_i M(j,i) sqrt(w_i) v_i, with weight |u_j|^2.
Ensemble hjw_ensemble(const DensityMatrix& rho, const Matrix& mixer);

}  // namespace qce

#endif
