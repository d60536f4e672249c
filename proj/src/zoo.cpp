#include "qce/zoo.hpp"

#include <cmath>

namespace qce {

namespace {

constexpr double kDropWeight = 1e-14;

Complex unit_phase(double angle) { return Complex(std::cos(angle), std::sin(angle)); }

// Columns of `u` reordered so that column s carries eigenvalue
// c * exp(2 pi i s / d) for a common phase c. Requires the spectrum of `u`
// to be a full phase-shifted cycle of d-th roots of unity.
UnitaryMatrix cyclic_eigenbasis(const Matrix& u, int d) {
  Eigen::ComplexEigenSolver<Matrix> es(u);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("cyclic_eigenbasis: eigensolver failed");
  }
  const Vector mu = es.eigenvalues();
  const Matrix vec = es.eigenvectors();
  const Complex ref = mu(0);
  Matrix out = Matrix::Zero(d, d);
  std::vector<bool> used(d, false);
  for (int t = 0; t < d; ++t) {
    double angle = std::arg(mu(t) / ref);
    int s = static_cast<int>(std::lround(angle * d / (2.0 * M_PI)));
    s = ((s % d) + d) % d;
    if (std::abs(mu(t) - ref * unit_phase(2.0 * M_PI * s / d)) > 1e-8 || used[s]) {
      throw std::runtime_error("cyclic_eigenbasis: spectrum is not a phase cycle");
    }
    used[s] = true;
    out.col(s) = vec.col(t);
  }
  return UnitaryMatrix(out);
}

}  // namespace

double ChannelMixture::total_weight() const {
  double t = 0.0;
  for (const auto& c : components) t += c.weight;
  return t;
}

Matrix phase_unitary(const UnitaryMatrix& basis) {
  const int d = basis.dim();
  Matrix v = Matrix::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    Vector e = basis.column(s);
    v += unit_phase(2.0 * M_PI * s / d) * (e * e.adjoint());
  }
  return v;
}

KrausChannel build_phase_damping(const PhaseDampingSpec& spec) {
  const int d = spec.basis.dim();
  if (static_cast<int>(spec.spectrum.size()) != d) {
    throw std::invalid_argument("build_phase_damping: spectrum size must match basis dimension");
  }
  Matrix v = phase_unitary(spec.basis);
  std::vector<Matrix> ops;
  Matrix vj = Matrix::Identity(d, d);
  for (int j = 0; j < d; ++j) {
    double lam = spec.spectrum[j];
    if (lam > kDropWeight) ops.push_back(std::sqrt(lam) * vj);
    vj = v * vj;
  }
  return KrausChannel(std::move(ops));
}

KrausChannel conditional_expectation(const UnitaryMatrix& basis) {
  const int d = basis.dim();
  std::vector<Matrix> ops;
  ops.reserve(d);
  for (int s = 0; s < d; ++s) {
    Vector e = basis.column(s);
    ops.push_back(e * e.adjoint());
  }
  return KrausChannel(std::move(ops));
}

UnitaryMatrix weyl_operator(int d, int m, int n) {
  if (d < 1 || m < 0 || m >= d || n < 0 || n >= d) {
    throw std::invalid_argument("weyl_operator: index out of range");
  }
  Matrix u = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    u((k + m) % d, k) = unit_phase(2.0 * M_PI * k * n / d);
  }
  return UnitaryMatrix(u);
}

KrausChannel build_weyl(const WeylSpec& spec) {
  const int d = spec.d;
  if (d < 1 || spec.weights.rows() != d || spec.weights.cols() != d) {
    throw std::invalid_argument("build_weyl: weight array must be d x d");
  }
  double sum = 0.0;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      if (spec.weights(m, n) < 0.0) {
        throw std::invalid_argument("build_weyl: negative weight");
      }
      sum += spec.weights(m, n);
    }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("build_weyl: weights do not sum to 1");
  }
  std::vector<Matrix> ops;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      double w = spec.weights(m, n);
      if (w > kDropWeight) ops.push_back(std::sqrt(w) * weyl_operator(d, m, n).mat());
    }
  return KrausChannel(std::move(ops));
}

namespace {

void validate_restricted_weyl(const RestrictedWeylSpec& spec) {
  const int d = spec.d;
  if (d < 2 || static_cast<int>(spec.r.size()) != d ||
      static_cast<int>(spec.p.size()) != d - 1) {
    throw std::invalid_argument("restricted Weyl: need d r-weights and d-1 p-weights");
  }
  double total = 0.0;
  for (double x : spec.r) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("restricted Weyl: r out of [0,1]");
    total += x;
  }
  for (double x : spec.p) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("restricted Weyl: p out of [0,1]");
    total += d * x;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("restricted Weyl: d*sum(p) + sum(r) != 1");
  }
}

}  // namespace

KrausChannel build_restricted_weyl(const RestrictedWeylSpec& spec) {
  validate_restricted_weyl(spec);
  const int d = spec.d;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    w(m, 0) = spec.r[m];
    for (int n = 1; n < d; ++n) w(m, n) = spec.p[n - 1];
  }
  return build_weyl(WeylSpec{d, w});
}

KrausChannel build_qc(const QcSpec& spec) {
  if (spec.povm.empty()) throw std::invalid_argument("build_qc: empty POVM");
  const int din = static_cast<int>(spec.povm.front().rows());
  const int nout = static_cast<int>(spec.povm.size());
  if (spec.out_basis.dim() != nout) {
    throw std::invalid_argument("build_qc: output basis must have one vector per POVM element");
  }
  Matrix total = Matrix::Zero(din, din);
  for (const Matrix& m : spec.povm) {
    if (m.rows() != din || m.cols() != din) {
      throw std::invalid_argument("build_qc: inconsistent POVM dimensions");
    }
    if (max_abs(m - m.adjoint()) > tol::hermitian) {
      throw std::invalid_argument("build_qc: POVM element is not Hermitian");
    }
    total += m;
  }
  total -= Matrix::Identity(din, din);
  if (max_abs(total) > tol::completeness) {
    throw std::invalid_argument("build_qc: POVM does not resolve the identity");
  }
  std::vector<Matrix> ops;
  for (int j = 0; j < nout; ++j) {
    auto [mu, psi] = hermitian_eig(spec.povm[j]);
    if (mu.minCoeff() < -tol::psd) {
      throw std::invalid_argument("build_qc: POVM element is not PSD");
    }
    Vector ej = spec.out_basis.column(j);
    for (Eigen::Index t = 0; t < mu.size(); ++t) {
      if (mu(t) <= kDropWeight) continue;
      ops.push_back(std::sqrt(mu(t)) * (ej * psi.col(t).adjoint()));
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel build_erasure(const ErasureSpec& spec) {
  const int d = spec.d;
  if (d < 1) throw std::invalid_argument("build_erasure: d must be >= 1");
  if (spec.epsilon < 0.0 || spec.epsilon > 1.0) {
    throw std::invalid_argument("build_erasure: epsilon out of [0,1]");
  }
  std::vector<Matrix> ops;
  if (spec.epsilon < 1.0) {
    Matrix embed = Matrix::Zero(d + 1, d);
    embed.topRows(d) = Matrix::Identity(d, d);
    ops.push_back(std::sqrt(1.0 - spec.epsilon) * embed);
  }
  if (spec.epsilon > 0.0) {
    for (int j = 0; j < d; ++j) {
      Matrix erase = Matrix::Zero(d + 1, d);
      erase(d, j) = std::sqrt(spec.epsilon);
      ops.push_back(std::move(erase));
    }
  }
  return KrausChannel(std::move(ops));
}

namespace {

double depolarizing_max_p(int d) {
  return static_cast<double>(d) * d / (static_cast<double>(d) * d - 1.0);
}

void validate_depolarizing(const DepolarizingSpec& spec) {
  if (spec.d < 2) throw std::invalid_argument("depolarizing: d must be >= 2");
  if (spec.p < 0.0 || spec.p > depolarizing_max_p(spec.d) + 1e-12) {
    throw std::invalid_argument("depolarizing: p outside the CP range [0, d^2/(d^2-1)]");
  }
}

}  // namespace

KrausChannel build_depolarizing(const DepolarizingSpec& spec) {
  validate_depolarizing(spec);
  const int d = spec.d;
  const double d2 = static_cast<double>(d) * d;
  double w_id = 1.0 - spec.p + spec.p / d2;
  if (w_id < 0.0) {
    if (w_id < -1e-12) throw std::invalid_argument("depolarizing: negative twirl weight");
    w_id = 0.0;
  }
  const double w_other = spec.p / d2;
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(d, d, w_other);
  w(0, 0) = w_id;
  return build_weyl(WeylSpec{d, w});
}

KrausChannel assemble_mixture(const ChannelMixture& mix) {
  std::vector<Matrix> ops;
  for (const auto& comp : mix.components) {
    if (comp.weight < 0.0) throw std::invalid_argument("assemble_mixture: negative weight");
    if (comp.weight <= kDropWeight) continue;
    const int d = comp.damping.basis.dim();
    Matrix v = phase_unitary(comp.damping.basis);
    Matrix vj = Matrix::Identity(d, d);
    for (int j = 0; j < d; ++j) {
      double lam = comp.damping.spectrum[j];
      if (lam > kDropWeight) {
        ops.push_back(std::sqrt(comp.weight * lam) * comp.frame.mat() * vj);
      }
      vj = v * vj;
    }
  }
  return KrausChannel(std::move(ops));
}

ChannelMixture decompose_restricted_weyl(const RestrictedWeylSpec& spec) {
  validate_restricted_weyl(spec);
  const int d = spec.d;
  if (!is_prime(d)) {
    throw std::invalid_argument("decompose_restricted_weyl: d must be prime");
  }
  double psum = 0.0;
  for (double x : spec.p) psum += x;
  const double lambda0 = 1.0 - d * psum;
  if (lambda0 <= 1e-12) {
    throw std::invalid_argument("decompose_restricted_weyl: degenerate spectrum, 1 - d*sum(p) <= 0");
  }
  std::vector<double> lambda(d);
  lambda[0] = lambda0;
  for (int n = 1; n < d; ++n) lambda[n] = d * spec.p[n - 1];
  ProbabilityVector spectrum(lambda);

  ChannelMixture mix;
  for (int k = 0; k < d; ++k) {
    // Psi_k is the phase damping generated by U_{k,1}: its n-th power is
    // U_{nk mod d, n} up to a phase that cancels under conjugation.
    UnitaryMatrix basis = cyclic_eigenbasis(weyl_operator(d, k, 1).mat(), d);
    for (int m = 0; m < d; ++m) {
      double cm = spec.r[m] / (d * lambda0);
      mix.components.push_back(
          MixtureComponent{cm, weyl_operator(d, m, 0), PhaseDampingSpec{basis, spectrum}});
    }
  }
  return mix;
}

MubFamily king_bases(int d) {
  if (d < 2) throw std::invalid_argument("king_bases: d must be >= 2");
  const int nbases = 2 * d * d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));

  UnitaryMatrix reference{Matrix::Identity(d, d)};
  std::vector<UnitaryMatrix> bases;
  bases.reserve(nbases);
  for (int k = 1; k <= nbases; ++k) {
    Matrix b(d, d);
    for (int j = 0; j < d; ++j)
      for (int s = 0; s < d; ++s) {
        double angle = 2.0 * M_PI *
                       (static_cast<double>(s) * s * k / (2.0 * d * d) +
                        static_cast<double>(j) * s / d);
        b(s, j) = amp * unit_phase(angle);
      }
    bases.emplace_back(std::move(b));
  }

  MubFamily fam{reference, std::move(bases), UnitaryMatrix{phase_unitary(reference)}, {}, {}};
  fam.v.reserve(nbases);
  fam.pinchings.reserve(nbases);
  for (const auto& b : fam.bases) {
    fam.v.emplace_back(phase_unitary(b));
    fam.pinchings.push_back(conditional_expectation(b));
  }
  return fam;
}

ChannelMixture decompose_depolarizing(const DepolarizingSpec& spec) {
  validate_depolarizing(spec);
  const int d = spec.d;
  const double p = spec.p;
  const int nbases = 2 * d * d;

  std::vector<double> lambda(d, p / d);
  lambda[0] = 1.0 - (d - 1.0) * p / d;
  if (lambda[0] < 0.0) {
    throw std::invalid_argument("decompose_depolarizing: negative component spectrum");
  }
  ProbabilityVector spectrum(lambda);

  // Total weight on the shift-conjugated components; the unshifted group
  // carries the complement so the mixture is trace preserving.
  const double denom = d * (d - (d - 1.0) * p);
  const double shifted_total = p * (d - 1.0) / denom;
  double w_shifted = shifted_total / ((d - 1.0) * nbases);
  double w_plain = (1.0 - shifted_total) / nbases;
  if (w_plain < -1e-12 || w_shifted < -1e-12) {
    throw std::invalid_argument("decompose_depolarizing: negative mixture weight");
  }
  w_plain = std::max(w_plain, 0.0);
  w_shifted = std::max(w_shifted, 0.0);

  MubFamily fam = king_bases(d);
  UnitaryMatrix ident{Matrix::Identity(d, d)};

  ChannelMixture mix;
  mix.components.reserve(nbases * d);
  for (int k = 0; k < nbases; ++k) {
    mix.components.push_back(
        MixtureComponent{w_plain, ident, PhaseDampingSpec{fam.bases[k], spectrum}});
  }
  Matrix uj = fam.u.mat();
  for (int j = 1; j < d; ++j) {
    UnitaryMatrix frame{uj};
    for (int k = 0; k < nbases; ++k) {
      mix.components.push_back(
          MixtureComponent{w_shifted, frame, PhaseDampingSpec{fam.bases[k], spectrum}});
    }
    uj = fam.u.mat() * uj;
  }

  double residual = std::abs(mix.total_weight() - 1.0);
  if (residual > 1e-10) {
    throw std::runtime_error("decompose_depolarizing: mixture weights do not normalize");
  }
  return mix;
}

UnbiasednessReport is_unbiased(const DensityMatrix& psi, const UnitaryMatrix& basis) {
  if (psi.dim() != basis.dim()) {
    throw std::invalid_argument("is_unbiased: dimension mismatch");
  }
  double purity = (psi.mat() * psi.mat()).trace().real();
  if (purity < 1.0 - 1e-10) {
    throw std::invalid_argument("is_unbiased: state is not pure");
  }
  const int d = basis.dim();
  double max_dev = 0.0;
  for (int s = 0; s < d; ++s) {
    Vector e = basis.column(s);
    double overlap = (e.adjoint() * psi.mat() * e)(0, 0).real();
    max_dev = std::max(max_dev, std::abs(overlap - 1.0 / d));
  }
  return UnbiasednessReport{max_dev <= 1e-10, max_dev};
}

}  // namespace qce
