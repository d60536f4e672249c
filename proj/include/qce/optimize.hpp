#ifndef QCE_OPTIMIZE_HPP
#define QCE_OPTIMIZE_HPP

#include "qce/holevo.hpp"

namespace qce {

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 500;          // pattern-search sweeps per run
  double objective_tolerance = 1e-8;
  int ensemble_size_cap = 0;         // 0 = input dimension squared
  RngSeed seed;
};

enum class BoundDirection { upper, lower };

// One-sided estimate with the witness ensemble that attains it. `value` is
// always the witness objective recomputed from scratch through the public
// entropy path. `restart_trace` is the best-so-far value after each restart.
struct Estimate {
  double value;
  BoundDirection direction;
  Ensemble witness;
  std::vector<double> restart_trace;
};

// Upper bound on H_Phi(rho) = min over ensembles averaging to rho of the
// mean output entropy. Searches pure-member ensembles of size <= cap via
// mixers exp(A) applied to a truncated identity block (A anti-Hermitian),
// with derivative-free pattern search from `restarts` seeded starts
// (restart 0 starts at the eigendecomposition of rho).
Estimate minimize_avg_output_entropy(const KrausChannel& phi, const DensityMatrix& rho,
                                     const OptimizerConfig& cfg);

// Upper bound on S_min(Phi): search over single pure input states.
Estimate minimize_output_entropy(const KrausChannel& phi, const OptimizerConfig& cfg);

// Lower bound on the one-shot classical capacity C_1(Phi): alternating
// search, pure-state lists by pattern search, weights by refine_weights.
Estimate maximize_holevo(const KrausChannel& phi, const OptimizerConfig& cfg);

// Inner convex step of the Holevo supremum: multiplicative updates
// pi_j <- pi_j 2^{S(Phi(x_j)||Phi(avg))} starting from uniform weights,
// capped at 200 iterations, stopping at relative chi improvement below
// cfg.objective_tolerance. The returned weights never undercut the uniform
// starting point.
ProbabilityVector refine_weights(const std::vector<DensityMatrix>& states,
                                 const KrausChannel& phi, const OptimizerConfig& cfg);

// All three quantities are one-sided upper estimates, so the verdict is
// heuristic: a negative slack triggers one escalation re-run with 4x the
// restarts before being reported as a violation.
struct SuperadditivityCheck {
  Estimate lhs;         // H_{Phi (x) Omega}(rho), upper estimate
  Estimate rhs_first;   // H_Phi(Tr_K rho)
  Estimate rhs_second;  // H_Omega(Tr_H rho)
  double slack;
  double tolerance;
  bool escalated;
  bool violation;
};

SuperadditivityCheck check_strong_superadditivity(const KrausChannel& phi,
                                                  const KrausChannel& omega,
                                                  const DensityMatrix& rho,
                                                  const OptimizerConfig& cfg,
                                                  double tolerance);

}  // namespace qce

#endif
