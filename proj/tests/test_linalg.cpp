#include <doctest.h>

#include "qce/rng.hpp"
#include "qce/zoo.hpp"

using namespace qce;

namespace {

Matrix random_hermitian(int d, const RngSeed& seed) {
  auto rng = seed.engine();
  Matrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = complex_gaussian(rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("hermitian_eig on a diagonal matrix returns the diagonal ascending") {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 1.0;
  h(1, 1) = 2.0;
  h(2, 2) = 3.0;
  auto [w, v] = hermitian_eig(h);
  CHECK(w(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w(2) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(max_abs(v.cwiseAbs().cast<Complex>() - Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("hermitian_eig of the bit-flip matrix gives (-1, 1)") {
  Matrix h(2, 2);
  h << 0, 1, 1, 0;
  auto [w, v] = hermitian_eig(h);
  CHECK(w(0) == doctest::Approx(-1.0));
  CHECK(w(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstructs 100 random matrices up to d=8") {
  RngSeed seed{1234, 0};
  for (int t = 0; t < 100; ++t) {
    int d = 2 + static_cast<int>(t % 7);
    Matrix h = random_hermitian(d, seed.child(t));
    auto [w, v] = hermitian_eig(h);
    Matrix rebuilt = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK(max_abs(rebuilt - h) < 1e-9);
  }
}

TEST_CASE("hermitian_eig rejects bad inputs") {
  CHECK_THROWS_AS(hermitian_eig(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 0);
  CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("kron of identities is the identity") {
  Matrix k = kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3));
  CHECK(max_abs(k - Matrix::Identity(6, 6)) == 0.0);
}

TEST_CASE("kron entries follow A(i,j) B(k,l)") {
  Matrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  Matrix k = kron(x, z);
  CHECK(k(0, 2) == Complex(1, 0));
  CHECK(k(1, 3) == Complex(-1, 0));
  CHECK(k(0, 3) == Complex(0, 0));
  CHECK(k(2, 0) == Complex(1, 0));
}

TEST_CASE("kron trace is multiplicative") {
  RngSeed seed{77, 0};
  Matrix a = random_hermitian(3, seed.child(1));
  Matrix b = random_hermitian(2, seed.child(2));
  Complex lhs = kron(a, b).trace();
  Complex rhs = a.trace() * b.trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("partial trace of a product state returns the kept factor") {
  RngSeed seed{5, 0};
  DensityMatrix sigma = sample_density(2, 2, seed.child(1));
  DensityMatrix tau = sample_density(3, 3, seed.child(2));
  DensityMatrix joint(kron(sigma.mat(), tau.mat()));
  CHECK(max_abs(partial_trace(joint, 2, 3, Subsystem::first).mat() - sigma.mat()) < 1e-12);
  CHECK(max_abs(partial_trace(joint, 2, 3, Subsystem::second).mat() - tau.mat()) < 1e-12);
}

TEST_CASE("partial trace of a maximally entangled pair is maximally mixed") {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  DensityMatrix rho = DensityMatrix::pure(psi);
  Matrix half = Matrix::Identity(2, 2) / 2.0;
  CHECK(max_abs(partial_trace(rho, 2, 2, Subsystem::first).mat() - half) < 1e-12);
  CHECK(max_abs(partial_trace(rho, 2, 2, Subsystem::second).mat() - half) < 1e-12);
}

TEST_CASE("partial trace preserves unit trace on random input") {
  DensityMatrix rho = sample_density(6, 6, RngSeed{9, 1});
  Matrix red = partial_trace(rho.mat(), 2, 3, Subsystem::second);
  CHECK(std::abs(red.trace().real() - 1.0) < 1e-12);
  CHECK_THROWS_AS(partial_trace(rho.mat(), 2, 2, Subsystem::first), std::invalid_argument);
}

TEST_CASE("DensityMatrix validates its invariants") {
  Matrix bad(2, 2);
  bad << Complex(0.5, 0), Complex(0.1, 0.2), Complex(0.3, -0.2), Complex(0.5, 0);
  CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);

  Matrix off_trace = 0.9 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{off_trace}, std::invalid_argument);

  Matrix indefinite(2, 2);
  indefinite << 1.2, 0, 0, -0.2;
  CHECK_THROWS_AS(DensityMatrix{indefinite}, std::invalid_argument);
}

TEST_CASE("UnitaryMatrix and ProbabilityVector validate") {
  CHECK_THROWS_AS(UnitaryMatrix{2.0 * Matrix::Identity(2, 2)}, std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityVector({0.5, -0.1, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.4}), std::invalid_argument);
  CHECK_NOTHROW(ProbabilityVector({1.0, 0.0}));
}

TEST_CASE("Haar unitary sampling") {
  SUBCASE("d=1 gives a unit-modulus scalar") {
    UnitaryMatrix u = sample_haar_unitary(1, RngSeed{3, 0});
    CHECK(std::abs(std::abs(u.mat()(0, 0)) - 1.0) < 1e-12);
  }
  SUBCASE("same seed reproduces the matrix exactly") {
    UnitaryMatrix a = sample_haar_unitary(4, RngSeed{31, 7});
    UnitaryMatrix b = sample_haar_unitary(4, RngSeed{31, 7});
    CHECK(max_abs(a.mat() - b.mat()) == 0.0);
  }
  SUBCASE("columns are unit norm and the matrix is unitary") {
    UnitaryMatrix u = sample_haar_unitary(3, RngSeed{32, 0});
    for (int j = 0; j < 3; ++j) CHECK(std::abs(u.mat().col(j).norm() - 1.0) < 1e-10);
    CHECK(max_abs(u.mat() * u.mat().adjoint() - Matrix::Identity(3, 3)) < 1e-10);
  }
}

TEST_CASE("density sampling") {
  SUBCASE("rank one states are pure") {
    DensityMatrix rho = sample_density(4, 1, RngSeed{11, 0});
    CHECK((rho.mat() * rho.mat()).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("full rank states have strictly positive spectrum") {
    DensityMatrix rho = sample_density(4, 4, RngSeed{12, 0});
    auto [w, v] = hermitian_eig(rho.mat());
    CHECK(w.minCoeff() > 0.0);
  }
  SUBCASE("fixed seed is byte identical") {
    DensityMatrix a = sample_density(3, 2, RngSeed{13, 5});
    DensityMatrix b = sample_density(3, 2, RngSeed{13, 5});
    CHECK(max_abs(a.mat() - b.mat()) == 0.0);
  }
  SUBCASE("rank out of range is rejected") {
    CHECK_THROWS_AS(sample_density(3, 0, RngSeed{}), std::invalid_argument);
    CHECK_THROWS_AS(sample_density(3, 4, RngSeed{}), std::invalid_argument);
  }
  SUBCASE("sampled spectra are normalized and nonnegative") {
    for (int t = 0; t < 50; ++t) {
      int d = 2 + t % 7;
      DensityMatrix rho =
          sample_density(d, 1 + t % d, RngSeed{900, static_cast<std::uint64_t>(t)});
      auto [w, v] = hermitian_eig(rho.mat());
      CHECK(std::abs(w.sum() - 1.0) < 1e-10);
      CHECK(w.minCoeff() >= -1e-10);
    }
  }
}

TEST_CASE("unbiased pure sampling hits every overlap at 1/d") {
  SUBCASE("d=2 computational basis") {
    UnitaryMatrix basis{Matrix::Identity(2, 2)};
    DensityMatrix psi = sample_unbiased_pure(basis, RngSeed{21, 0});
    for (int s = 0; s < 2; ++s) {
      CHECK(psi.mat()(s, s).real() == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("d=3 Haar basis, all moduli equal") {
    UnitaryMatrix basis = sample_haar_unitary(3, RngSeed{22, 0});
    DensityMatrix psi = sample_unbiased_pure(basis, RngSeed{23, 0});
    auto rep = is_unbiased(psi, basis);
    CHECK(rep.unbiased);
    CHECK(rep.max_deviation < 1e-12);
  }
  SUBCASE("the Fourier vector is unbiased for the computational basis") {
    const int d = 4;
    Vector f(d);
    for (int s = 0; s < d; ++s) {
      double angle = 2.0 * M_PI * s / d;
      f(s) = Complex(std::cos(angle), std::sin(angle)) / std::sqrt(double(d));
    }
    auto rep = is_unbiased(DensityMatrix::pure(f), UnitaryMatrix{Matrix::Identity(d, d)});
    CHECK(rep.unbiased);
  }
}

TEST_CASE("RngSeed children depend on ids, not call order") {
  RngSeed root{99, 4};
  RngSeed a = root.child(1);
  RngSeed b = root.child(2);
  CHECK(a.stream != b.stream);
  CHECK(root.child(1).stream == a.stream);
}
