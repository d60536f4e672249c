#ifndef QCE_ZOO_HPP
#define QCE_ZOO_HPP

#include "qce/channel.hpp"

namespace qce {

//=========================================================================
// Channel specifications
//=========================================================================

struct PhaseDampingSpec {
  UnitaryMatrix basis;          // columns |e_s>
  ProbabilityVector spectrum;   // lambda_j
};

struct WeylSpec {
  int d;
  Eigen::MatrixXd weights;      // pi_{m,n}, a d x d probability array
};

// Weyl channel with row weights r_m on the shift operators U_{m,0} and a
// common column weight p_n on each U_{m,n}, n >= 1. Constraint:
// d * sum_n p_n + sum_m r_m = 1.
struct RestrictedWeylSpec {
  int d;
  std::vector<double> r;        // r_0 .. r_{d-1}
  std::vector<double> p;        // p_1 .. p_{d-1}
};

struct QcSpec {
  std::vector<Matrix> povm;     // M_j, PSD, resolving the identity
  UnitaryMatrix out_basis;      // columns |e_j>, one per POVM element
};

struct ErasureSpec {
  int d;                        // input dimension; output dimension is d+1
  double epsilon;               // erasure probability
};

struct DepolarizingSpec {
  int d;
  double p;                     // 0 <= p <= d^2/(d^2-1)
};

//=========================================================================
// Constructions
//=========================================================================

// V = sum_s exp(2 pi i s / d) |e_s><e_s| for the given basis columns.
Matrix phase_unitary(const UnitaryMatrix& basis);

// rho -> sum_j lambda_j V^j rho V^*j.
KrausChannel build_phase_damping(const PhaseDampingSpec& spec);

// Pinching rho -> sum_s |e_s><e_s| rho |e_s><e_s| (the conditional
// expectation onto the algebra fixed by the phase damping).
KrausChannel conditional_expectation(const UnitaryMatrix& basis);

// U_{m,n} = sum_k exp(2 pi i k n / d) |k+m mod d><k|.
UnitaryMatrix weyl_operator(int d, int m, int n);

KrausChannel build_weyl(const WeylSpec& spec);
KrausChannel build_restricted_weyl(const RestrictedWeylSpec& spec);

KrausChannel build_qc(const QcSpec& spec);
KrausChannel build_erasure(const ErasureSpec& spec);

// (1-p) rho + (p/d) I, realized as a Weyl mixture with weight 1-p+p/d^2 on
// the identity and p/d^2 on every other U_{m,n}; this keeps a valid Kraus
// form over the whole range 0 <= p <= d^2/(d^2-1).
KrausChannel build_depolarizing(const DepolarizingSpec& spec);

//=========================================================================
// Structured mixtures of conjugated phase dampings
//=========================================================================

struct MixtureComponent {
  double weight;
  UnitaryMatrix frame;          // conjugating unitary
  PhaseDampingSpec damping;
};

// rho -> sum_c weight_c * frame_c Psi_c(rho) frame_c*.
struct ChannelMixture {
  std::vector<MixtureComponent> components;
  double total_weight() const;
};

KrausChannel assemble_mixture(const ChannelMixture& mix);

// Prime-dimension decomposition of a restricted Weyl channel into shift
// conjugations of d phase damping channels Psi_k (spectrum lambda_0 =
// 1 - d sum p_n, lambda_n = d p_n; shift weights c_m = r_m / (d lambda_0)).
ChannelMixture decompose_restricted_weyl(const RestrictedWeylSpec& spec);

//=========================================================================
// The 2d^2 bases unbiased against a reference basis
//=========================================================================

struct MubFamily {
  UnitaryMatrix reference;                 // |f_j>, the computational basis
  std::vector<UnitaryMatrix> bases;        // |e_j^k>, k = 1..2d^2
  UnitaryMatrix u;                         // sum_s exp(2 pi i s/d)|f_s><f_s|
  std::vector<UnitaryMatrix> v;            // same phases on each basis k
  std::vector<KrausChannel> pinchings;     // conditional expectations E_k
};

// |e_j^k> = (1/sqrt d) sum_s exp(2 pi i s^2 k / (2 d^2)) exp(2 pi i j s / d) |f_s>.
// The index-j dependence is the Fourier phase exp(2 pi i j s / d); a constant
// phase in s would make all j-vectors parallel, which the orthonormality
// checks reject.
MubFamily king_bases(int d);

// Depolarizing channel as a mixture of the 2d^2 phase dampings Psi_k
// (spectrum lambda_0 = 1 - (d-1)p/d, lambda_j = p/d) and their U^j
// conjugates. The conjugated components carry total weight
// p(d-1) / (d (d - (d-1)p)); the unshifted components carry the complement,
// fixed by trace preservation.
ChannelMixture decompose_depolarizing(const DepolarizingSpec& spec);

//=========================================================================
// Unbiasedness test
//=========================================================================

struct UnbiasednessReport {
  bool unbiased;
  double max_deviation;         // max_s | |<psi|e_s>|^2 - 1/d |
};

UnbiasednessReport is_unbiased(const DensityMatrix& psi, const UnitaryMatrix& basis);

}  // namespace qce

#endif
