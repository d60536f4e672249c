#include "qce/optimize.hpp"

#include <cmath>
#include <functional>

namespace qce {

namespace {

constexpr double kInitialStep = 0.3;
constexpr double kShrink = 0.5;
constexpr double kMinStep = 1e-6;

// Opportunistic coordinate pattern search with a shrinking step; the step
// halves whenever a full sweep finds no improving probe.
double pattern_search(const std::function<double(const std::vector<double>&)>& fn,
                      std::vector<double>& x, int max_iterations) {
  double f = fn(x);
  double step = kInitialStep;
  const std::size_t n = x.size();
  for (int iter = 0; step >= kMinStep && iter < max_iterations; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double orig = x[i];
      x[i] = orig + step;
      double fp = fn(x);
      if (fp < f) {
        f = fp;
        improved = true;
        continue;
      }
      x[i] = orig - step;
      double fm = fn(x);
      if (fm < f) {
        f = fm;
        improved = true;
        continue;
      }
      x[i] = orig;
    }
    if (!improved) step *= kShrink;
  }
  return f;
}

void validate_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_iterations < 1 || cfg.objective_tolerance <= 0.0 ||
      cfg.ensemble_size_cap < 0) {
    throw std::invalid_argument("OptimizerConfig: fields must be positive");
  }
}

// k x k anti-Hermitian matrix from k^2 real parameters: imaginary diagonal
// plus complex strict upper triangle.
Matrix anti_hermitian(const std::vector<double>& theta, int k) {
  Matrix a = Matrix::Zero(k, k);
  std::size_t t = 0;
  for (int i = 0; i < k; ++i) a(i, i) = Complex(0.0, theta[t++]);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double re = theta[t++];
      const double im = theta[t++];
      a(i, j) = Complex(re, im);
      a(j, i) = Complex(-re, im);
    }
  return a;
}

// First r columns of exp(A) for anti-Hermitian A (via the Hermitian -iA).
Matrix mixer_from_params(const std::vector<double>& theta, int k, int r) {
  Matrix h = Complex(0.0, -1.0) * anti_hermitian(theta, k);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(k);
  for (int i = 0; i < k; ++i) {
    double g = es.eigenvalues()(i);
    phases(i) = Complex(std::cos(g), std::sin(g));
  }
  Matrix q = es.eigenvectors();
  return q * phases.asDiagonal() * q.adjoint().leftCols(r);
}

double spectrum_entropy_of(const Matrix& out, double norm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(out, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues(), norm);
}

Vector normalized_vector(const std::vector<double>& theta, std::size_t offset, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    v(i) = Complex(theta[offset + i], theta[offset + d + i]);
  }
  double n = v.norm();
  if (n < 1e-8) return Vector();
  return v / n;
}

void append_running_best(std::vector<double>& trace, double value, bool minimize) {
  if (trace.empty()) {
    trace.push_back(value);
  } else {
    double prev = trace.back();
    trace.push_back(minimize ? std::min(prev, value) : std::max(prev, value));
  }
}

}  // namespace

Estimate minimize_avg_output_entropy(const KrausChannel& phi, const DensityMatrix& rho,
                                     const OptimizerConfig& cfg) {
  validate_config(cfg);
  const int d = phi.input_dim();
  if (rho.dim() != d) {
    throw std::invalid_argument("minimize_avg_output_entropy: dimension mismatch");
  }
  auto [w, v] = hermitian_eig(rho.mat());
  std::vector<int> supp;
  for (int i = 0; i < d; ++i)
    if (w(i) > 1e-12) supp.push_back(i);
  const int rank = static_cast<int>(supp.size());
  const int cap = cfg.ensemble_size_cap > 0 ? std::min(cfg.ensemble_size_cap, d * d)
                                            : d * d;
  const int k = std::max(rank, cap);

  Matrix scaled(d, rank);
  for (int i = 0; i < rank; ++i) scaled.col(i) = std::sqrt(w(supp[i])) * v.col(supp[i]);

  auto objective = [&](const std::vector<double>& theta) {
    Matrix mixer = mixer_from_params(theta, k, rank);
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
      Vector u = scaled * mixer.row(j).transpose();
      double pj = u.squaredNorm();
      if (pj < 1e-14) continue;
      Matrix out = phi.apply_matrix(u * u.adjoint());
      total += pj * spectrum_entropy_of(out, pj);
    }
    return total;
  };

  const std::size_t nparams = static_cast<std::size_t>(k) * k;
  double best = 0.0;
  std::vector<double> best_theta;
  std::vector<double> trace;
  for (int s = 0; s < cfg.restarts; ++s) {
    std::vector<double> theta(nparams, 0.0);
    if (s > 0) {
      auto rng = cfg.seed.child(s).engine();
      for (double& t : theta) t = 0.5 * gaussian(rng);
    }
    double f = pattern_search(objective, theta, cfg.max_iterations);
    if (best_theta.empty() || f < best) {
      best = f;
      best_theta = theta;
    }
    append_running_best(trace, best, true);
  }

  Ensemble witness = hjw_ensemble(rho, mixer_from_params(best_theta, k, rank));
  double recomputed = 0.0;
  for (std::size_t j = 0; j < witness.size(); ++j) {
    recomputed +=
        witness.weights()[j] * von_neumann_entropy(phi.apply(witness.states()[j])).bits();
  }
  if (std::abs(recomputed - best) > 1e-9) {
    throw std::runtime_error("minimize_avg_output_entropy: witness does not reproduce the objective");
  }
  return Estimate{recomputed, BoundDirection::upper, std::move(witness), std::move(trace)};
}

Estimate minimize_output_entropy(const KrausChannel& phi, const OptimizerConfig& cfg) {
  validate_config(cfg);
  const int d = phi.input_dim();
  auto objective = [&](const std::vector<double>& theta) {
    Vector psi = normalized_vector(theta, 0, d);
    if (psi.size() == 0) return 1e3;  // collapsed parameterization
    Matrix out = phi.apply_matrix(psi * psi.adjoint());
    return spectrum_entropy_of(out, 1.0);
  };

  double best = 0.0;
  std::vector<double> best_theta;
  std::vector<double> trace;
  for (int s = 0; s < cfg.restarts; ++s) {
    std::vector<double> theta(2 * d, 0.0);
    if (s == 0) {
      theta[0] = 1.0;
    } else {
      auto rng = cfg.seed.child(s).engine();
      for (double& t : theta) t = gaussian(rng);
    }
    double f = pattern_search(objective, theta, cfg.max_iterations);
    if (best_theta.empty() || f < best) {
      best = f;
      best_theta = theta;
    }
    append_running_best(trace, best, true);
  }

  Vector psi = normalized_vector(best_theta, 0, d);
  Ensemble witness({1.0}, {DensityMatrix::pure(psi)});
  double recomputed = von_neumann_entropy(phi.apply(witness.states()[0])).bits();
  if (std::abs(recomputed - best) > 1e-9) {
    throw std::runtime_error("minimize_output_entropy: witness does not reproduce the objective");
  }
  return Estimate{recomputed, BoundDirection::upper, std::move(witness), std::move(trace)};
}

namespace {

// chi of a pure-state list with fixed weights, on raw matrices.
double chi_of_states(const KrausChannel& phi, const std::vector<Vector>& states,
                     const std::vector<double>& weights) {
  const int dout = phi.output_dim();
  Matrix avg = Matrix::Zero(dout, dout);
  double chi = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    Matrix out = phi.apply_matrix(states[j] * states[j].adjoint());
    avg += weights[j] * out;
    chi -= weights[j] * spectrum_entropy_of(out, 1.0);
  }
  chi += spectrum_entropy_of(avg, 1.0);
  return chi;
}

}  // namespace

ProbabilityVector refine_weights(const std::vector<DensityMatrix>& states,
                                 const KrausChannel& phi, const OptimizerConfig& cfg) {
  validate_config(cfg);
  if (states.empty()) throw std::invalid_argument("refine_weights: empty state list");
  const std::size_t m = states.size();
  std::vector<Matrix> outs(m);
  for (std::size_t j = 0; j < m; ++j) outs[j] = phi.apply_matrix(states[j].mat());

  auto chi_and_scores = [&](const std::vector<double>& pi, std::vector<double>& scores) {
    Matrix avg = Matrix::Zero(phi.output_dim(), phi.output_dim());
    for (std::size_t j = 0; j < m; ++j) avg += pi[j] * outs[j];
    DensityMatrix avg_state(avg);
    double chi = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      EntropyValue s = relative_entropy(DensityMatrix(outs[j]), avg_state);
      scores[j] = s.is_infinite() ? 60.0 : std::min(s.bits(), 60.0);
      chi += pi[j] * scores[j];
    }
    return chi;
  };

  std::vector<double> pi(m, 1.0 / static_cast<double>(m));
  std::vector<double> scores(m, 0.0);
  double chi = chi_and_scores(pi, scores);
  std::vector<double> best_pi = pi;
  double best_chi = chi;

  for (int it = 0; it < 200; ++it) {
    double total = 0.0;
    std::vector<double> next(m);
    for (std::size_t j = 0; j < m; ++j) {
      next[j] = pi[j] * std::exp2(scores[j]);
      total += next[j];
    }
    for (double& x : next) x /= total;
    double chi_next = chi_and_scores(next, scores);
    if (chi_next > best_chi) {
      best_chi = chi_next;
      best_pi = next;
    }
    if (std::abs(chi_next - chi) < cfg.objective_tolerance * std::max(1.0, std::abs(chi_next))) {
      break;
    }
    pi = std::move(next);
    chi = chi_next;
  }
  return ProbabilityVector(best_pi);
}

Estimate maximize_holevo(const KrausChannel& phi, const OptimizerConfig& cfg) {
  validate_config(cfg);
  const int d = phi.input_dim();
  const int m = cfg.ensemble_size_cap > 0 ? std::min(cfg.ensemble_size_cap, d * d)
                                          : d * d;
  const std::size_t nparams = static_cast<std::size_t>(2) * d * m;
  constexpr int kMaxAlternations = 8;

  auto states_of = [&](const std::vector<double>& theta) {
    std::vector<Vector> states(m);
    for (int j = 0; j < m; ++j) {
      Vector psi = normalized_vector(theta, static_cast<std::size_t>(2) * d * j, d);
      states[j] = psi.size() == 0 ? Vector::Unit(d, 0) : psi;
    }
    return states;
  };

  double best = -1.0;
  std::vector<double> best_theta;
  std::vector<double> best_weights;
  std::vector<double> trace;

  for (int s = 0; s < cfg.restarts; ++s) {
    std::vector<double> theta(nparams, 0.0);
    if (s == 0) {
      for (int j = 0; j < m; ++j) theta[static_cast<std::size_t>(2) * d * j + j % d] = 1.0;
    } else {
      auto rng = cfg.seed.child(s).engine();
      for (double& t : theta) t = gaussian(rng);
    }

    std::vector<double> weights(m, 1.0 / m);
    double chi = chi_of_states(phi, states_of(theta), weights);
    double local_best = chi;
    std::vector<double> local_theta = theta;
    std::vector<double> local_weights = weights;
    for (int alt = 0; alt < kMaxAlternations; ++alt) {
      std::vector<DensityMatrix> dms;
      dms.reserve(m);
      for (const Vector& psi : states_of(theta)) dms.push_back(DensityMatrix::pure(psi));
      weights = refine_weights(dms, phi, cfg).weights();

      auto objective = [&](const std::vector<double>& t) {
        return -chi_of_states(phi, states_of(t), weights);
      };
      double chi_next = -pattern_search(objective, theta, cfg.max_iterations);
      if (chi_next > local_best) {
        local_best = chi_next;
        local_theta = theta;
        local_weights = weights;
      }
      if (chi_next - chi < cfg.objective_tolerance * std::max(1.0, std::abs(chi_next))) {
        break;
      }
      chi = chi_next;
    }

    if (local_best > best) {
      best = local_best;
      best_theta = local_theta;
      best_weights = local_weights;
    }
    append_running_best(trace, best, false);
  }

  std::vector<DensityMatrix> member_states;
  member_states.reserve(m);
  for (const Vector& psi : states_of(best_theta)) {
    member_states.push_back(DensityMatrix::pure(psi));
  }
  Ensemble witness(best_weights, member_states);
  HolevoQuantity hq = holevo_chi(witness, phi);
  if (std::abs(hq.chi - best) > 1e-9) {
    throw std::runtime_error("maximize_holevo: witness does not reproduce the objective");
  }
  return Estimate{hq.chi, BoundDirection::lower, std::move(witness), std::move(trace)};
}

SuperadditivityCheck check_strong_superadditivity(const KrausChannel& phi,
                                                  const KrausChannel& omega,
                                                  const DensityMatrix& rho,
                                                  const OptimizerConfig& cfg,
                                                  double tolerance) {
  const int dh = phi.input_dim();
  const int dk = omega.input_dim();
  if (rho.dim() != dh * dk) {
    throw std::invalid_argument("check_strong_superadditivity: dimension mismatch");
  }
  KrausChannel joint = channel_tensor(phi, omega);
  DensityMatrix marg_h = partial_trace(rho, dh, dk, Subsystem::first);
  DensityMatrix marg_k = partial_trace(rho, dh, dk, Subsystem::second);

  auto run = [&](const OptimizerConfig& c) {
    OptimizerConfig cl = c, c1 = c, c2 = c;
    cl.seed = c.seed.child(1);
    c1.seed = c.seed.child(2);
    c2.seed = c.seed.child(3);
    Estimate lhs = minimize_avg_output_entropy(joint, rho, cl);
    Estimate rhs_first = minimize_avg_output_entropy(phi, marg_h, c1);
    Estimate rhs_second = minimize_avg_output_entropy(omega, marg_k, c2);
    double slack = lhs.value - rhs_first.value - rhs_second.value;
    return SuperadditivityCheck{std::move(lhs), std::move(rhs_first),
                                std::move(rhs_second), slack,
                                0.0, false, false};
  };

  SuperadditivityCheck check = run(cfg);
  check.tolerance = tolerance;
  if (check.slack < -tolerance) {
    OptimizerConfig boosted = cfg;
    boosted.restarts = cfg.restarts * 4;
    boosted.seed = cfg.seed.child(0xE5CA1A7Eull);
    check = run(boosted);
    check.tolerance = tolerance;
    check.escalated = true;
  }
  check.violation = check.slack < -tolerance;
  return check;
}

}  // namespace qce
