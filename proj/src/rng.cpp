#include "qce/rng.hpp"

#include <cmath>

namespace qce {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RngSeed RngSeed::child(std::uint64_t substream) const {
  return RngSeed{seed, splitmix64(stream ^ splitmix64(substream + 1))};
}

std::mt19937_64 RngSeed::engine() const {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex complex_gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  double u2 = uniform01(rng);
  double r = std::sqrt(-2.0 * std::log(u1));
  return Complex(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
}

std::vector<double> sample_simplex(int n, std::mt19937_64& rng) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = uniform01(rng);
    while (u <= 0.0) u = uniform01(rng);
    w[i] = -std::log(u);  // Exp(1) draws normalize to a uniform simplex point
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

UnitaryMatrix sample_haar_unitary(int d, const RngSeed& seed) {
  if (d < 1) throw std::invalid_argument("sample_haar_unitary: d must be >= 1");
  auto rng = seed.engine();
  Matrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = complex_gaussian(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex rjj = r(j, j);
    double a = std::abs(rjj);
    q.col(j) *= (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
  }
  return UnitaryMatrix(q);
}

DensityMatrix sample_density(int d, int rank, const RngSeed& seed) {
  if (d < 1) throw std::invalid_argument("sample_density: d must be >= 1");
  if (rank < 1 || rank > d) {
    throw std::invalid_argument("sample_density: rank out of range");
  }
  auto rng = seed.engine();
  Matrix g(d, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = complex_gaussian(rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

Vector sample_unbiased_vector(const UnitaryMatrix& basis, const RngSeed& seed) {
  auto rng = seed.engine();
  const int d = basis.dim();
  Vector f = Vector::Zero(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int s = 0; s < d; ++s) {
    double theta = 2.0 * M_PI * uniform01(rng);
    f += amp * Complex(std::cos(theta), std::sin(theta)) * basis.column(s);
  }
  return f;
}

DensityMatrix sample_unbiased_pure(const UnitaryMatrix& basis, const RngSeed& seed) {
  return DensityMatrix::pure(sample_unbiased_vector(basis, seed));
}

}  // namespace qce
