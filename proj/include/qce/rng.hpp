#ifndef QCE_RNG_HPP
#define QCE_RNG_HPP

#include <cstdint>
#include <random>

#include "qce/linalg.hpp"

namespace qce {

// Seed plus a stream id. Sub-tasks derive their own streams with child();
// derived streams are a pure function of (seed, stream), never of call order.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngSeed child(std::uint64_t substream) const;
  std::mt19937_64 engine() const;
};

// Uniform in [0, 1), from the top 53 bits of the engine output.
double uniform01(std::mt19937_64& rng);

// Standard normal via Box-Muller (no dependence on libstdc++ distribution
// internals, so streams are stable across standard libraries).
double gaussian(std::mt19937_64& rng);

// Re + i Im with independent standard normal parts.
Complex complex_gaussian(std::mt19937_64& rng);

// Uniform point on the probability simplex (normalized exponentials).
std::vector<double> sample_simplex(int n, std::mt19937_64& rng);

// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
// diagonal phase-normalized.
UnitaryMatrix sample_haar_unitary(int d, const RngSeed& seed);

// GG*/Tr(GG*) with G a d x rank complex Gaussian factor.
DensityMatrix sample_density(int d, int rank, const RngSeed& seed);

// Pure state with |<f|e_s>|^2 = 1/d against every column of `basis`
// (uniform random phases on the given basis).
Vector sample_unbiased_vector(const UnitaryMatrix& basis, const RngSeed& seed);
DensityMatrix sample_unbiased_pure(const UnitaryMatrix& basis, const RngSeed& seed);

}  // namespace qce

#endif
