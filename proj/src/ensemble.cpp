#include "qce/ensemble.hpp"

#include <cmath>

namespace qce {

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw std::invalid_argument("Ensemble: weights and states must be nonempty and aligned");
  }
  const int d = states.front().dim();
  double kept = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].dim() != d) {
      throw std::invalid_argument("Ensemble: states have mixed dimensions");
    }
    if (weights[j] < 0.0) throw std::invalid_argument("Ensemble: negative weight");
    if (weights[j] < 1e-14) continue;
    kept += weights[j];
    weights_.push_back(weights[j]);
    states_.push_back(states[j]);
  }
  if (states_.empty()) throw std::invalid_argument("Ensemble: all weights vanish");
  for (double& w : weights_) w /= kept;
  average();  // validates that the mean is a proper state
}

DensityMatrix Ensemble::average() const {
  Matrix avg = Matrix::Zero(dim(), dim());
  for (std::size_t j = 0; j < states_.size(); ++j) avg += weights_[j] * states_[j].mat();
  return DensityMatrix(avg);
}

Ensemble hjw_ensemble(const DensityMatrix& rho, const Matrix& mixer) {
  auto [w, v] = hermitian_eig(rho.mat());
  const int d = rho.dim();

  std::vector<int> supp;
  for (int i = 0; i < d; ++i)
    if (w(i) > 1e-12) supp.push_back(i);
  const int rank = static_cast<int>(supp.size());

  if (mixer.cols() != rank || mixer.rows() < rank) {
    throw std::invalid_argument(
        "hjw_ensemble: mixer must have rank(rho) columns and at least rank(rho) rows");
  }
  Matrix gram = mixer.adjoint() * mixer;
  gram -= Matrix::Identity(rank, rank);
  if (max_abs(gram) > 1e-10) {
    throw std::invalid_argument("hjw_ensemble: mixer columns are not orthonormal");
  }

  Matrix scaled(d, rank);  // columns sqrt(w_i) v_i
  for (int i = 0; i < rank; ++i) scaled.col(i) = std::sqrt(w(supp[i])) * v.col(supp[i]);

  const int k = static_cast<int>(mixer.rows());
  std::vector<double> weights;
  std::vector<DensityMatrix> states;
  weights.reserve(k);
  states.reserve(k);
  for (int j = 0; j < k; ++j) {
    Vector u = scaled * mixer.row(j).transpose();
    double pj = u.squaredNorm();
    weights.push_back(pj);
    if (pj < 1e-14) {
      states.push_back(DensityMatrix::pure(Vector::Unit(d, 0)));  // dropped by Ensemble
    } else {
      states.push_back(DensityMatrix::pure(u));
    }
  }
  return Ensemble(std::move(weights), std::move(states));
}

}  // namespace qce
