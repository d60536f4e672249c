#include "qce/suites.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "qce/optimize.hpp"
#include "qce/serialize.hpp"
#include "qce/zoo.hpp"

namespace qce {

namespace {

constexpr const char* kVersion = "0.1.0";
const double kInf = std::numeric_limits<double>::infinity();

//=========================================================================
// Resolved per-suite configuration
//=========================================================================

struct Resolved {
  std::vector<int> dims;
  double tolerance = 1e-8;
  int restarts = 4;
  int max_iterations = 300;
  int ensemble_cap = 0;       // 0 = optimizer default (input dim squared)
  bool prime_dims_only = false;
};

struct SuiteDefaults {
  std::vector<int> dims;
  double tolerance;
  int restarts;
  int max_iterations;
  int ensemble_cap;   // optimizer cap for the suite; 0 = input dim squared
  bool prime_dims_only;
};

// Optimizer-backed suites cap the joint-system ensembles at 6 members: the
// estimates stay sound upper bounds at any cap, rank-sized ensembles already
// sit within ~1e-4 of the d^2-member search on these instances, and the
// marginal (single-system) problems still get their full d^2 members.
const std::map<std::string, SuiteDefaults>& suite_defaults() {
  static const std::map<std::string, SuiteDefaults> table = {
      {"monotonicity", {{2, 3}, 1e-8, 0, 0, 0, false}},
      {"entropy-properties", {{2, 3, 4}, 1e-8, 0, 0, 0, false}},
      {"prop1", {{3}, 1e-6, 8, 200, 6, false}},
      {"prop2", {{2, 3}, 1e-8, 0, 0, 0, false}},
      {"thm-phase", {{2}, 1e-6, 6, 200, 0, false}},
      {"thm-weyl", {{2}, 1e-6, 6, 200, 0, true}},
      {"thm-noiseless", {{2}, 1e-6, 4, 150, 6, false}},
      {"thm-qc", {{2}, 1e-6, 4, 150, 6, false}},
      {"thm-erasure", {{2}, 1e-6, 4, 150, 6, false}},
      {"thm-depolarizing", {{2}, 1e-6, 4, 150, 6, false}},
      {"lemma-qc", {{2, 3}, 1e-8, 0, 0, 0, false}},
      {"lemma-erasure", {{2, 3}, 1e-8, 0, 0, 0, false}},
      {"proof-replay", {{2, 3}, 1e-9, 0, 0, 0, false}},
      {"decompositions", {{2, 3, 5}, 0.0, 0, 0, 0, false}},
      {"mub", {{2, 3, 5}, 1e-10, 0, 0, 0, false}},
      {"strong-superadd", {{2}, 1e-6, 4, 150, 6, false}},
  };
  return table;
}

//=========================================================================
// Task runner (trials may execute concurrently; records merge in order)
//=========================================================================

using Task = std::function<std::vector<CheckRecord>()>;

std::vector<CheckRecord> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<std::vector<CheckRecord>> results(tasks.size());
  if (jobs <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr error;
    auto worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          results[i] = tasks[i]();
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  std::vector<CheckRecord> flat;
  for (auto& chunk : results)
    for (auto& r : chunk) flat.push_back(std::move(r));
  return flat;
}

class Stopwatch {
public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

void stamp(std::vector<CheckRecord>& records, const Stopwatch& watch) {
  double ms = watch.ms();
  for (auto& r : records) r.wall_ms = ms;
}

//=========================================================================
// Record helpers
//=========================================================================

double entropy_or_inf(const EntropyValue& v) { return v.is_infinite() ? kInf : v.bits(); }

//=========================================================================
// Samplers
//=========================================================================

DensityMatrix maximally_mixed(int d) {
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

// Bipartite state whose first marginal lies in the convex hull of pure
// states unbiased for `basis`: mixtures of unbiased (x) arbitrary product
// states and, when dk >= d, rotated maximally entangled pairs (marginal I/d).
DensityMatrix sample_unbiased_hull_bipartite(const UnitaryMatrix& basis, int dk,
                                             const RngSeed& seed) {
  const int d = basis.dim();
  auto rng = seed.engine();
  const int ncomp = 1 + static_cast<int>(rng() % 3);
  std::vector<double> q = sample_simplex(ncomp, rng);
  Matrix acc = Matrix::Zero(d * dk, d * dk);
  std::uint64_t sub = 100;
  for (int i = 0; i < ncomp; ++i) {
    const bool entangled = dk >= d && uniform01(rng) < 0.5;
    if (entangled) {
      UnitaryMatrix gh = sample_haar_unitary(d, seed.child(sub++));
      UnitaryMatrix gk = sample_haar_unitary(dk, seed.child(sub++));
      Vector psi = Vector::Zero(d * dk);
      const double amp = 1.0 / std::sqrt(static_cast<double>(d));
      for (int j = 0; j < d; ++j)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < dk; ++b)
            psi(a * dk + b) += amp * gh.mat()(a, j) * gk.mat()(b, j);
      acc += q[i] * (psi * psi.adjoint());
    } else {
      Vector psi = sample_unbiased_vector(basis, seed.child(sub++));
      int rank = 1 + static_cast<int>(rng() % dk);
      DensityMatrix tau = sample_density(dk, rank, seed.child(sub++));
      acc += q[i] * kron(psi * psi.adjoint(), tau.mat());
    }
  }
  return DensityMatrix(acc);
}

// Single-system state in the unbiased hull (or exactly I/d, which is the
// uniform mixture of the generalized Fourier vectors of the basis).
DensityMatrix sample_unbiased_hull_single(const UnitaryMatrix& basis, const RngSeed& seed) {
  const int d = basis.dim();
  auto rng = seed.engine();
  if (uniform01(rng) < 0.2) return maximally_mixed(d);
  const int ncomp = 1 + static_cast<int>(rng() % (d + 1));
  std::vector<double> q = sample_simplex(ncomp, rng);
  Matrix acc = Matrix::Zero(d, d);
  for (int i = 0; i < ncomp; ++i) {
    Vector psi = sample_unbiased_vector(basis, seed.child(200 + i));
    acc += q[i] * (psi * psi.adjoint());
  }
  return DensityMatrix(acc);
}

// Random bipartite state pinched to a diagonal first marginal.
DensityMatrix sample_diagonal_marginal_bipartite(int d, int dk, const RngSeed& seed) {
  DensityMatrix rho0 = sample_density(d * dk, d * dk, seed);
  Matrix m = rho0.mat();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) m.block(i * dk, j * dk, dk, dk).setZero();
  return DensityMatrix(m);
}

PhaseDampingSpec sample_phase_damping_spec(int d, const RngSeed& seed) {
  auto rng = seed.child(1).engine();
  return PhaseDampingSpec{sample_haar_unitary(d, seed.child(2)),
                          ProbabilityVector(sample_simplex(d, rng))};
}

RestrictedWeylSpec sample_restricted_weyl_spec(int d, const RngSeed& seed) {
  auto rng = seed.engine();
  // Keep 1 - d sum(p) = sum(r) away from zero so the decomposition formulas
  // stay well conditioned.
  double t = 0.15 + 0.75 * uniform01(rng);
  std::vector<double> r = sample_simplex(d, rng);
  std::vector<double> b = sample_simplex(d - 1, rng);
  for (double& x : r) x *= t;
  std::vector<double> p(d - 1);
  for (int n = 0; n < d - 1; ++n) p[n] = b[n] * (1.0 - t) / d;
  return RestrictedWeylSpec{d, r, p};
}

std::vector<Matrix> random_povm(int d, const RngSeed& seed, bool projective) {
  if (projective) {
    UnitaryMatrix u = sample_haar_unitary(d, seed);
    std::vector<Matrix> povm;
    for (int j = 0; j < d; ++j) {
      Vector v = u.column(j);
      povm.push_back(v * v.adjoint());
    }
    return povm;
  }
  auto rng = seed.engine();
  std::vector<Matrix> blocks;
  Matrix total = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    Matrix g(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) g(r, c) = complex_gaussian(rng);
    Matrix m = g * g.adjoint();
    total += m;
    blocks.push_back(std::move(m));
  }
  auto [w, v] = hermitian_eig(total);
  Matrix inv_sqrt = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    inv_sqrt += (1.0 / std::sqrt(w(i))) * (v.col(i) * v.col(i).adjoint());
  }
  std::vector<Matrix> povm;
  for (Matrix& m : blocks) {
    Matrix e = inv_sqrt * m * inv_sqrt;
    povm.push_back(0.5 * (e + e.adjoint()));
  }
  return povm;
}

QcSpec sample_qc_spec(int d, const RngSeed& seed, bool projective) {
  return QcSpec{random_povm(d, seed, projective),
                UnitaryMatrix(Matrix::Identity(d, d))};
}

OptimizerConfig make_opt_cfg(const Resolved& res, const RngSeed& seed) {
  OptimizerConfig cfg;
  cfg.restarts = res.restarts;
  cfg.max_iterations = res.max_iterations;
  cfg.ensemble_size_cap = res.ensemble_cap;
  cfg.seed = seed;
  return cfg;
}

//=========================================================================
// Suites
//=========================================================================

std::vector<CheckRecord> suite_monotonicity(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        KrausChannel phi = sample_cptp_channel(d, s.child(1));
        DensityMatrix sigma = sample_density(d, d, s.child(2));
        DensityMatrix rho = sample_density(d, d, s.child(3));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"channel", channel_to_json(phi)},
                                             {"sigma", matrix_to_json(sigma.mat())},
                                             {"rho", matrix_to_json(rho.mat())}});
        double rhs = entropy_or_inf(relative_entropy(sigma, rho));
        double lhs = entropy_or_inf(relative_entropy(phi.apply(sigma), phi.apply(rho)));
        std::vector<CheckRecord> out{inequality_record(
            cfg.suite, rid, digest, lhs, rhs, res.tolerance, false, false)};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

std::vector<CheckRecord> suite_entropy_properties(const SuiteConfig& cfg,
                                                  const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  for (int d : res.dims) {
    // Unitary invariance.
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        UnitaryMatrix u = sample_haar_unitary(d, s.child(1));
        DensityMatrix sigma = sample_density(d, d, s.child(2));
        DensityMatrix rho = sample_density(d, d, s.child(3));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"property", "unitary-invariance"},
                                             {"u", matrix_to_json(u.mat())},
                                             {"sigma", matrix_to_json(sigma.mat())},
                                             {"rho", matrix_to_json(rho.mat())}});
        double base = relative_entropy(sigma, rho).bits();
        DensityMatrix us(u.mat() * sigma.mat() * u.mat().adjoint());
        DensityMatrix ur(u.mat() * rho.mat() * u.mat().adjoint());
        double rotated = relative_entropy(us, ur).bits();
        std::vector<CheckRecord> out{identity_record(cfg.suite, rid, digest,
                                                     std::abs(rotated - base),
                                                     res.tolerance)};
        stamp(out, watch);
        return out;
      });
    }
    // Monotonicity under partial trace.
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        const int dk = 2;
        DensityMatrix sigma = sample_density(d * dk, d * dk, s.child(1));
        DensityMatrix rho = sample_density(d * dk, d * dk, s.child(2));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"property", "partial-trace"},
                                             {"sigma", matrix_to_json(sigma.mat())},
                                             {"rho", matrix_to_json(rho.mat())}});
        double rhs = entropy_or_inf(relative_entropy(sigma, rho));
        double lhs = entropy_or_inf(
            relative_entropy(partial_trace(sigma, d, dk, Subsystem::first),
                             partial_trace(rho, d, dk, Subsystem::first)));
        std::vector<CheckRecord> out{inequality_record(
            cfg.suite, rid, digest, lhs, rhs, res.tolerance, false, false)};
        stamp(out, watch);
        return out;
      });
    }
    // Additivity over tensor products.
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        DensityMatrix s1 = sample_density(d, d, s.child(1));
        DensityMatrix r1 = sample_density(d, d, s.child(2));
        DensityMatrix s2 = sample_density(2, 2, s.child(3));
        DensityMatrix r2 = sample_density(2, 2, s.child(4));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"property", "additivity"},
                                             {"sigma1", matrix_to_json(s1.mat())},
                                             {"rho1", matrix_to_json(r1.mat())},
                                             {"sigma2", matrix_to_json(s2.mat())},
                                             {"rho2", matrix_to_json(r2.mat())}});
        double joint = relative_entropy(DensityMatrix(kron(s1.mat(), s2.mat())),
                                        DensityMatrix(kron(r1.mat(), r2.mat())))
                           .bits();
        double split =
            relative_entropy(s1, r1).bits() + relative_entropy(s2, r2).bits();
        std::vector<CheckRecord> out{identity_record(cfg.suite, rid, digest,
                                                     std::abs(joint - split),
                                                     res.tolerance)};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

std::vector<CheckRecord> suite_prop1(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      const bool pinned = (t == 0 && d == 3);
      tasks.push_back([=]() {
        Stopwatch watch;
        PhaseDampingSpec spec =
            pinned ? PhaseDampingSpec{UnitaryMatrix(Matrix::Identity(3, 3)),
                                      ProbabilityVector({0.5, 0.3, 0.2})}
                   : sample_phase_damping_spec(d, s.child(1));
        KrausChannel phi = build_phase_damping(spec);
        DensityMatrix rho = pinned ? maximally_mixed(3)
                                   : sample_unbiased_hull_single(spec.basis, s.child(2));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"channel", channel_to_json(spec)},
                                             {"rho", matrix_to_json(rho.mat())}});
        double rhs = shannon_entropy(spec.spectrum).bits();
        Estimate est = minimize_avg_output_entropy(phi, rho, make_opt_cfg(res, s.child(3)));
        double lhs = est.value;
        if (lhs - rhs > res.tolerance) {
          Resolved boosted = res;
          boosted.restarts *= 4;
          est = minimize_avg_output_entropy(phi, rho, make_opt_cfg(boosted, s.child(4)));
          lhs = std::min(lhs, est.value);
        }
        std::vector<CheckRecord> out{inequality_record(cfg.suite, rid, digest, lhs, rhs,
                                                       res.tolerance, false, false)};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

std::vector<CheckRecord> suite_prop2(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  const int dk = 2;
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        PhaseDampingSpec spec = sample_phase_damping_spec(d, s.child(1));
        KrausChannel phi = build_phase_damping(spec);
        DensityMatrix rho = sample_unbiased_hull_bipartite(spec.basis, dk, s.child(2));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"dk", dk},
                                             {"channel", channel_to_json(spec)},
                                             {"rho", matrix_to_json(rho.mat())}});
        KrausChannel joint = channel_tensor(phi, KrausChannel::identity(dk));
        double lhs = von_neumann_entropy(joint.apply(rho)).bits();

        double mean_cond = 0.0;
        for (int j = 0; j < d; ++j) {
          Vector e = spec.basis.column(j);
          Matrix proj = kron(Matrix(e * e.adjoint()), Matrix::Identity(dk, dk));
          Matrix block = partial_trace(proj * rho.mat(), d, dk, Subsystem::second);
          Matrix scaled = 0.5 * static_cast<double>(d) * (block + block.adjoint());
          if (std::abs(scaled.trace().real() - 1.0) > 1e-8) {
            throw std::runtime_error("prop2: sampled marginal is not unbiased");
          }
          mean_cond += von_neumann_entropy(DensityMatrix(scaled)).bits();
        }
        double rhs = shannon_entropy(spec.spectrum).bits() + mean_cond / d;
        std::vector<CheckRecord> out{inequality_record(cfg.suite, rid, digest, lhs, rhs,
                                                       res.tolerance, true, false)};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

// Shared body for thm-phase and thm-weyl: exact left side, optimizer right side.
std::vector<CheckRecord> restricted_input_theorem(const SuiteConfig& cfg,
                                                  const Resolved& res, bool weyl) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  const int dk = 2;
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        Json channel_json;
        KrausChannel phi = KrausChannel::identity(d);
        DensityMatrix rho = maximally_mixed(d * dk);
        if (weyl) {
          RestrictedWeylSpec spec = sample_restricted_weyl_spec(d, s.child(1));
          phi = build_restricted_weyl(spec);
          channel_json = channel_to_json(spec);
          rho = sample_diagonal_marginal_bipartite(d, dk, s.child(2));
        } else {
          PhaseDampingSpec spec = sample_phase_damping_spec(d, s.child(1));
          phi = build_phase_damping(spec);
          channel_json = channel_to_json(spec);
          rho = sample_unbiased_hull_bipartite(spec.basis, dk, s.child(2));
        }
        KrausChannel omega = sample_cptp_channel(dk, s.child(3));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"dk", dk},
                                             {"channel", channel_json},
                                             {"omega", channel_to_json(omega)},
                                             {"rho", matrix_to_json(rho.mat())}});
        double lhs = von_neumann_entropy(channel_tensor(phi, omega).apply(rho)).bits();

        DensityMatrix marg_h = partial_trace(rho, d, dk, Subsystem::first);
        DensityMatrix marg_k = partial_trace(rho, d, dk, Subsystem::second);
        auto rhs_of = [&](const Resolved& r, std::uint64_t salt) {
          return minimize_avg_output_entropy(phi, marg_h, make_opt_cfg(r, s.child(salt)))
                     .value +
                 minimize_avg_output_entropy(omega, marg_k,
                                             make_opt_cfg(r, s.child(salt + 1)))
                     .value;
        };
        double rhs = rhs_of(res, 10);
        if (lhs - rhs < -res.tolerance) {
          Resolved boosted = res;
          boosted.restarts *= 4;
          rhs = std::min(rhs, rhs_of(boosted, 20));
        }
        std::vector<CheckRecord> out{inequality_record(cfg.suite, rid, digest, lhs, rhs,
                                                       res.tolerance, true, true)};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

// Strong superadditivity with all three quantities estimated; `make_phi`
// builds the channel under test for a given (d, trial).
std::vector<CheckRecord> strong_superadditivity_suite(
    const SuiteConfig& cfg, const Resolved& res,
    const std::function<std::pair<KrausChannel, Json>(int d, int t, const RngSeed&)>&
        make_phi) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  const int dk = 2;
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        auto [phi, phi_json] = make_phi(d, t, s.child(1));
        KrausChannel omega = sample_cptp_channel(dk, s.child(2));
        DensityMatrix rho = sample_density(d * dk, d * dk, s.child(3));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"dk", dk},
                                             {"channel", phi_json},
                                             {"omega", channel_to_json(omega)},
                                             {"rho", matrix_to_json(rho.mat())}});
        SuperadditivityCheck check = check_strong_superadditivity(
            phi, omega, rho, make_opt_cfg(res, s.child(4)), res.tolerance);
        CheckRecord r = inequality_record(
            cfg.suite, rid, digest, check.lhs.value,
            check.rhs_first.value + check.rhs_second.value, res.tolerance, true, true);
        if (check.violation) r.verdict = Verdict::fail;
        std::vector<CheckRecord> out{r};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

std::vector<CheckRecord> suite_lemma_qc(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  const int dk = 2;
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      const bool projective = (t % 4 == 0);
      const bool product = (t % 5 == 0);
      tasks.push_back([=]() {
        Stopwatch watch;
        QcSpec spec = sample_qc_spec(d, s.child(1), projective);
        KrausChannel phi = build_qc(spec);
        DensityMatrix rho =
            product ? DensityMatrix(kron(sample_density(d, d, s.child(2)).mat(),
                                         sample_density(dk, dk, s.child(3)).mat()))
                    : sample_density(d * dk, d * dk, s.child(2));
        std::string digest = digest_hex(Json{{"d", d},
                                             {"dk", dk},
                                             {"channel", channel_to_json(spec)},
                                             {"rho", matrix_to_json(rho.mat())}});
        KrausChannel joint = channel_tensor(phi, KrausChannel::identity(dk));
        double lhs = von_neumann_entropy(joint.apply(rho)).bits();

        DensityMatrix marg_h = partial_trace(rho, d, dk, Subsystem::first);
        double rhs = von_neumann_entropy(phi.apply(marg_h)).bits();
        for (std::size_t j = 0; j < spec.povm.size(); ++j) {
          double lam = (spec.povm[j] * marg_h.mat()).trace().real();
          if (lam < 1e-12) continue;  // vanishing outcome contributes nothing
          Matrix block = partial_trace(kron(spec.povm[j], Matrix::Identity(dk, dk)) * rho.mat(),
                                       d, dk, Subsystem::second);
          Matrix cond = 0.5 * (block + block.adjoint()) / lam;
          rhs += lam * von_neumann_entropy(DensityMatrix(cond)).bits();
        }
        std::vector<CheckRecord> out{inequality_record(cfg.suite, rid, digest, lhs, rhs,
                                                       res.tolerance, true, false)};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

std::vector<CheckRecord> suite_lemma_erasure(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  const int dk = 2;
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t, ++id) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t rid = id;
      const int grid_slot = (t % 2 == 0) ? (t / 2) % 5 : -1;
      tasks.push_back([=]() {
        Stopwatch watch;
        auto rng = s.child(1).engine();
        double eps = grid_slot >= 0 ? grid[grid_slot] : uniform01(rng);
        KrausChannel phi = build_erasure(ErasureSpec{d, eps});
        DensityMatrix rho = sample_density(d * dk, d * dk, s.child(2));
        std::string digest =
            digest_hex(Json{{"d", d},
                            {"dk", dk},
                            {"channel", channel_to_json(ErasureSpec{d, eps})},
                            {"rho", matrix_to_json(rho.mat())}});
        KrausChannel joint = channel_tensor(phi, KrausChannel::identity(dk));
        double lhs = von_neumann_entropy(joint.apply(rho)).bits();
        // Third term: the erasure channel's minimal average output entropy,
        // h(eps) exactly (every pure input has output spectrum {1-eps, eps}).
        double h_eps = 0.0;
        if (eps > 0.0) h_eps -= eps * std::log2(eps);
        if (eps < 1.0) h_eps -= (1.0 - eps) * std::log2(1.0 - eps);
        double rhs =
            eps * von_neumann_entropy(partial_trace(rho, d, dk, Subsystem::second)).bits() +
            (1.0 - eps) * von_neumann_entropy(rho).bits() + h_eps;
        std::vector<CheckRecord> out{inequality_record(cfg.suite, rid, digest, lhs, rhs,
                                                       res.tolerance, true, false)};
        stamp(out, watch);
        return out;
      });
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

//=========================================================================
// Proof replay: the auxiliary channels assembled from their Choi matrices
//=========================================================================

Matrix measure_prepare_choi(const std::vector<Matrix>& effects,
                            const std::vector<Matrix>& prepared) {
  Matrix c = Matrix::Zero(effects.front().rows() * prepared.front().rows(),
                          effects.front().rows() * prepared.front().rows());
  for (std::size_t j = 0; j < effects.size(); ++j) {
    c += kron(effects[j].transpose(), prepared[j]);
  }
  return c;
}

std::vector<CheckRecord> replay_xi_phase(const SuiteConfig& cfg, const Resolved& res,
                                         int d, int dk, const RngSeed& s,
                                         std::int64_t base_id) {
  PhaseDampingSpec spec = sample_phase_damping_spec(d, s.child(1));
  KrausChannel phi = build_phase_damping(spec);
  DensityMatrix rho = sample_unbiased_hull_bipartite(spec.basis, dk, s.child(2));
  DensityMatrix y = sample_density(dk, dk, s.child(3));
  std::string digest = digest_hex(Json{{"kind", "xi-phase"},
                                       {"d", d},
                                       {"dk", dk},
                                       {"channel", channel_to_json(spec)},
                                       {"rho", matrix_to_json(rho.mat())},
                                       {"y", matrix_to_json(y.mat())}});
  const int bipartite = d * dk;
  const Matrix idk = Matrix::Identity(dk, dk);
  Matrix v = phase_unitary(spec.basis);

  std::vector<Matrix> effects, prepared;
  Matrix vj = Matrix::Identity(d, d);
  for (int j = 0; j < d; ++j) {
    Vector e = spec.basis.column(j);
    effects.push_back(kron(Matrix(e * e.adjoint()), idk));
    Matrix vjk = kron(vj, idk);
    prepared.push_back(vjk * rho.mat() * vjk.adjoint());
    vj = v * vj;
  }
  KrausChannel xi =
      channel_from_choi(measure_prepare_choi(effects, prepared), bipartite, bipartite);
  CptpReport rep = is_cptp(xi);
  double cptp_residual =
      std::max(rep.completeness_residual, std::max(0.0, -rep.choi_min_eigenvalue));

  Matrix sigma = Matrix::Zero(bipartite, bipartite);
  Matrix sigma_bar = kron(Matrix::Identity(d, d) / static_cast<double>(d), y.mat());
  for (int j = 0; j < d; ++j) {
    Vector e = spec.basis.column(j);
    sigma += spec.spectrum[j] * kron(Matrix(e * e.adjoint()), y.mat());
  }

  KrausChannel joint = channel_tensor(phi, KrausChannel::identity(dk));
  double id_sigma = max_abs(xi.apply_matrix(sigma) - joint.apply_matrix(rho.mat()));

  Matrix pinched = Matrix::Zero(bipartite, bipartite);
  for (const Matrix& p : prepared) pinched += p / static_cast<double>(d);
  double id_bar = max_abs(xi.apply_matrix(sigma_bar) - pinched);

  // Conditional expectation absorbs the channel: E~ o (Phi (x) Id) = E~.
  KrausChannel tilde_e =
      channel_tensor(conditional_expectation(spec.basis), KrausChannel::identity(dk));
  double id_absorb = max_abs(choi(channel_compose(tilde_e, joint)) - choi(tilde_e));

  // S(sigma || sigma_bar) = log2 d - H(lambda).
  double anchor = relative_entropy(DensityMatrix(sigma), DensityMatrix(sigma_bar)).bits();
  double id_anchor = std::abs(
      anchor - (std::log2(static_cast<double>(d)) - shannon_entropy(spec.spectrum).bits()));

  std::vector<CheckRecord> out;
  out.push_back(identity_record(cfg.suite, base_id + 0, digest, cptp_residual, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 1, digest, id_sigma, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 2, digest, id_bar, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 3, digest, id_absorb, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 4, digest, id_anchor, res.tolerance));
  return out;
}

std::vector<CheckRecord> replay_sigma_qc(const SuiteConfig& cfg, const Resolved& res,
                                         int d, int dk, const RngSeed& s,
                                         std::int64_t base_id, bool projective) {
  QcSpec spec = sample_qc_spec(d, s.child(1), projective);
  KrausChannel phi = build_qc(spec);
  DensityMatrix rho = sample_density(d * dk, d * dk, s.child(2));
  std::string digest = digest_hex(Json{{"kind", "sigma-qc"},
                                       {"d", d},
                                       {"dk", dk},
                                       {"channel", channel_to_json(spec)},
                                       {"rho", matrix_to_json(rho.mat())}});
  DensityMatrix marg_h = partial_trace(rho, d, dk, Subsystem::first);

  std::vector<Matrix> effects, prepared;
  Matrix mixture = Matrix::Zero(d * dk, d * dk);
  for (int j = 0; j < d; ++j) {
    double lam = (spec.povm[j] * marg_h.mat()).trace().real();
    Vector e = spec.out_basis.column(j);
    Matrix proj = e * e.adjoint();
    Matrix block = partial_trace(kron(spec.povm[j], Matrix::Identity(dk, dk)) * rho.mat(),
                                 d, dk, Subsystem::second);
    Matrix cond = 0.5 * (block + block.adjoint()) / lam;
    effects.push_back(proj);
    prepared.push_back(kron(proj, cond));
    mixture += kron(proj, cond) / static_cast<double>(d);
  }
  KrausChannel sigma_chan =
      channel_from_choi(measure_prepare_choi(effects, prepared), d, d * dk);
  CptpReport rep = is_cptp(sigma_chan);
  double cptp_residual =
      std::max(rep.completeness_residual, std::max(0.0, -rep.choi_min_eigenvalue));

  KrausChannel joint = channel_tensor(phi, KrausChannel::identity(dk));
  double f1 = max_abs(sigma_chan.apply_matrix(phi.apply(marg_h).mat()) -
                      joint.apply_matrix(rho.mat()));
  double f2 = max_abs(
      sigma_chan.apply_matrix(Matrix::Identity(d, d) / static_cast<double>(d)) - mixture);

  std::vector<CheckRecord> out;
  out.push_back(identity_record(cfg.suite, base_id + 0, digest, cptp_residual, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 1, digest, f1, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 2, digest, f2, res.tolerance));
  return out;
}

std::vector<CheckRecord> replay_sigma_erasure(const SuiteConfig& cfg, const Resolved& res,
                                              int d, int dk, const RngSeed& s,
                                              std::int64_t base_id, double eps) {
  KrausChannel phi = build_erasure(ErasureSpec{d, eps});
  DensityMatrix rho = sample_density(d * dk, d * dk, s.child(1));
  std::string digest = digest_hex(Json{{"kind", "sigma-erasure"},
                                       {"d", d},
                                       {"dk", dk},
                                       {"channel", channel_to_json(ErasureSpec{d, eps})},
                                       {"rho", matrix_to_json(rho.mat())}});
  DensityMatrix marg_h = partial_trace(rho, d, dk, Subsystem::first);
  Matrix marg_k = partial_trace(rho, d, dk, Subsystem::second).mat();

  const int dprime = d + 1;
  Matrix embed = Matrix::Zero(dprime, d);
  embed.topRows(d) = Matrix::Identity(d, d);
  Matrix embed_k = kron(embed, Matrix::Identity(dk, dk));
  Matrix rho_hat = embed_k * rho.mat() * embed_k.adjoint();

  Matrix p_omega = Matrix::Zero(dprime, dprime);
  p_omega(d, d) = 1.0;
  Matrix p_h = Matrix::Zero(dprime, dprime);
  p_h.topLeftCorner(d, d) = Matrix::Identity(d, d);

  std::vector<Matrix> effects{p_omega, p_h};
  std::vector<Matrix> prepared{kron(p_omega, marg_k), rho_hat};
  KrausChannel sigma_chan =
      channel_from_choi(measure_prepare_choi(effects, prepared), dprime, dprime * dk);
  CptpReport rep = is_cptp(sigma_chan);
  double cptp_residual =
      std::max(rep.completeness_residual, std::max(0.0, -rep.choi_min_eigenvalue));

  KrausChannel joint = channel_tensor(phi, KrausChannel::identity(dk));
  double f3 = max_abs(sigma_chan.apply_matrix(phi.apply(marg_h).mat()) -
                      joint.apply_matrix(rho.mat()));

  // Mixed input (|w><w| + |e><e|)/2 with |e> the leading eigenvector of the
  // H marginal.
  auto [w, v] = hermitian_eig(marg_h.mat());
  Vector e_top = Vector::Zero(dprime);
  e_top.head(d) = v.col(v.cols() - 1);
  Matrix mixed_in = 0.5 * p_omega + 0.5 * (e_top * e_top.adjoint());
  Matrix expected = 0.5 * kron(p_omega, marg_k) + 0.5 * rho_hat;
  double f4 = max_abs(sigma_chan.apply_matrix(mixed_in) - expected);

  std::vector<CheckRecord> out;
  out.push_back(identity_record(cfg.suite, base_id + 0, digest, cptp_residual, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 1, digest, f3, res.tolerance));
  out.push_back(identity_record(cfg.suite, base_id + 2, digest, f4, res.tolerance));
  return out;
}

std::vector<CheckRecord> suite_proof_replay(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  const int dk = 2;
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int d : res.dims) {
    for (int t = 0; t < cfg.trials; ++t) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t base = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        auto out = replay_xi_phase(cfg, res, d, dk, s, base);
        stamp(out, watch);
        return out;
      });
      id += 5;

      RngSeed s2 = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t base2 = id;
      const bool projective = (t % 3 == 0);
      tasks.push_back([=]() {
        Stopwatch watch;
        auto out = replay_sigma_qc(cfg, res, d, dk, s2, base2, projective);
        stamp(out, watch);
        return out;
      });
      id += 3;

      RngSeed s3 = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t base3 = id;
      const int slot = t % 6;
      tasks.push_back([=]() {
        Stopwatch watch;
        auto rng = s3.child(9).engine();
        double eps = slot < 5 ? grid[slot] : uniform01(rng);
        auto out = replay_sigma_erasure(cfg, res, d, dk, s3, base3, eps);
        stamp(out, watch);
        return out;
      });
      id += 3;
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

//=========================================================================
// Decompositions and the 2d^2-bases suite
//=========================================================================

std::vector<CheckRecord> suite_decompositions(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  const bool custom_tol = cfg.tolerance > 0.0;
  const double tol_weyl = custom_tol ? cfg.tolerance : 1e-10;
  const double tol_depol = custom_tol ? cfg.tolerance : 1e-9;
  const double tol_weight = custom_tol ? cfg.tolerance : 1e-12;

  for (int d : res.dims) {
    if (!is_prime(d)) continue;
    for (int t = 0; t < cfg.trials; ++t) {
      RngSeed s = cfg.seed.child(static_cast<std::uint64_t>(id));
      std::int64_t base = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        RestrictedWeylSpec spec = sample_restricted_weyl_spec(d, s.child(1));
        std::string digest = digest_hex(
            Json{{"part", "restricted-weyl"}, {"d", d}, {"channel", channel_to_json(spec)}});
        ChannelMixture mix = decompose_restricted_weyl(spec);
        double residual =
            max_abs(choi(assemble_mixture(mix)) - choi(build_restricted_weyl(spec)));
        double weight_residual = std::abs(mix.total_weight() - 1.0);
        std::vector<CheckRecord> out{
            identity_record(cfg.suite, base + 0, digest, residual, tol_weyl),
            identity_record(cfg.suite, base + 1, digest, weight_residual, tol_weight)};
        stamp(out, watch);
        return out;
      });
      id += 2;
    }
  }
  for (int d : res.dims) {
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
    grid.push_back(static_cast<double>(d) * d / (static_cast<double>(d) * d - 1.0));
    for (double p : grid) {
      std::int64_t base = id;
      tasks.push_back([=]() {
        Stopwatch watch;
        DepolarizingSpec spec{d, p};
        std::string digest = digest_hex(
            Json{{"part", "depolarizing"}, {"d", d}, {"channel", channel_to_json(spec)}});
        ChannelMixture mix = decompose_depolarizing(spec);
        double residual =
            max_abs(choi(assemble_mixture(mix)) - choi(build_depolarizing(spec)));
        double weight_residual = std::abs(mix.total_weight() - 1.0);
        std::vector<CheckRecord> out{
            identity_record(cfg.suite, base + 0, digest, residual, tol_depol),
            identity_record(cfg.suite, base + 1, digest, weight_residual,
                            custom_tol ? cfg.tolerance : 1e-10)};
        stamp(out, watch);
        return out;
      });
      id += 2;
    }
  }
  return run_tasks(tasks, cfg.jobs);
}

std::vector<CheckRecord> suite_mub(const SuiteConfig& cfg, const Resolved& res) {
  std::vector<Task> tasks;
  std::int64_t id = 0;
  for (int d : res.dims) {
    std::int64_t base = id;
    tasks.push_back([=]() {
      Stopwatch watch;
      MubFamily fam = king_bases(d);
      std::vector<CheckRecord> out;
      std::int64_t rid = base;
      for (std::size_t k = 0; k < fam.bases.size(); ++k) {
        std::string digest =
            digest_hex(Json{{"d", d}, {"k", static_cast<int>(k + 1)}});
        const Matrix& b = fam.bases[k].mat();
        Matrix gram = b.adjoint() * b;
        gram -= Matrix::Identity(d, d);
        double ortho = max_abs(gram);

        double unbiased = 0.0;
        for (int j = 0; j < d; ++j)
          for (int ss = 0; ss < d; ++ss) {
            double overlap = std::norm(b(ss, j));
            unbiased = std::max(unbiased, std::abs(overlap - 1.0 / d));
          }

        double pinch = 0.0;
        const Matrix mixed = Matrix::Identity(d, d) / static_cast<double>(d);
        for (int j = 0; j < d; ++j) {
          Vector f = fam.reference.column(j);
          pinch = std::max(
              pinch, max_abs(fam.pinchings[k].apply_matrix(f * f.adjoint()) - mixed));
        }

        out.push_back(identity_record(cfg.suite, rid++, digest, ortho, res.tolerance));
        out.push_back(identity_record(cfg.suite, rid++, digest, unbiased, res.tolerance));
        out.push_back(identity_record(cfg.suite, rid++, digest, pinch, res.tolerance));
      }
      stamp(out, watch);
      return out;
    });
    id += static_cast<std::int64_t>(3) * 2 * d * d;
  }
  return run_tasks(tasks, cfg.jobs);
}

//=========================================================================
// Registry and driver
//=========================================================================

std::vector<CheckRecord> dispatch(const SuiteConfig& cfg, const Resolved& res) {
  const std::string& name = cfg.suite;
  if (name == "monotonicity") return suite_monotonicity(cfg, res);
  if (name == "entropy-properties") return suite_entropy_properties(cfg, res);
  if (name == "prop1") return suite_prop1(cfg, res);
  if (name == "prop2") return suite_prop2(cfg, res);
  if (name == "thm-phase") return restricted_input_theorem(cfg, res, false);
  if (name == "thm-weyl") return restricted_input_theorem(cfg, res, true);
  if (name == "thm-noiseless") {
    return strong_superadditivity_suite(cfg, res, [](int d, int, const RngSeed&) {
      return std::make_pair(KrausChannel::identity(d),
                            Json{{"kind", "noiseless"}, {"d", d}});
    });
  }
  if (name == "thm-qc") {
    return strong_superadditivity_suite(cfg, res, [](int d, int t, const RngSeed& s) {
      QcSpec spec = sample_qc_spec(d, s, t % 4 == 0);
      return std::make_pair(build_qc(spec), channel_to_json(spec));
    });
  }
  if (name == "thm-erasure") {
    return strong_superadditivity_suite(cfg, res, [](int d, int t, const RngSeed& s) {
      const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
      auto rng = s.engine();
      double eps = (t % 2 == 0) ? grid[(t / 2) % 5] : uniform01(rng);
      ErasureSpec spec{d, eps};
      return std::make_pair(build_erasure(spec), channel_to_json(spec));
    });
  }
  if (name == "thm-depolarizing") {
    return strong_superadditivity_suite(cfg, res, [](int d, int t, const RngSeed&) {
      std::vector<double> grid;
      for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
      grid.push_back(static_cast<double>(d) * d / (static_cast<double>(d) * d - 1.0));
      DepolarizingSpec spec{d, grid[t % grid.size()]};
      return std::make_pair(build_depolarizing(spec), channel_to_json(spec));
    });
  }
  if (name == "lemma-qc") return suite_lemma_qc(cfg, res);
  if (name == "lemma-erasure") return suite_lemma_erasure(cfg, res);
  if (name == "proof-replay") return suite_proof_replay(cfg, res);
  if (name == "decompositions") return suite_decompositions(cfg, res);
  if (name == "mub") return suite_mub(cfg, res);
  if (name == "strong-superadd") {
    return strong_superadditivity_suite(cfg, res, [](int d, int, const RngSeed& s) {
      KrausChannel phi = sample_cptp_channel(d, s);
      return std::make_pair(phi, channel_to_json(phi));
    });
  }
  throw ConfigError("unknown suite: " + name);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, defs] : suite_defaults()) out.push_back(name);
    return out;
  }();
  return names;
}

Report run_suite(const SuiteConfig& cfg) {
  auto it = suite_defaults().find(cfg.suite);
  if (it == suite_defaults().end()) throw ConfigError("unknown suite: " + cfg.suite);
  const SuiteDefaults& defs = it->second;

  Resolved res;
  res.dims = cfg.dims.empty() ? defs.dims : cfg.dims;
  res.tolerance = cfg.tolerance > 0.0 ? cfg.tolerance : defs.tolerance;
  res.restarts = cfg.restarts > 0 ? cfg.restarts : defs.restarts;
  if (defs.max_iterations > 0) res.max_iterations = defs.max_iterations;
  res.ensemble_cap = defs.ensemble_cap;
  res.prime_dims_only = defs.prime_dims_only;

  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  for (int d : res.dims) {
    if (d < 2 || d > 8) throw ConfigError("dims must lie in 2..8");
    if (res.prime_dims_only && !is_prime(d)) {
      throw ConfigError("suite '" + cfg.suite + "' requires prime dimensions");
    }
  }

  Stopwatch watch;
  Report report;
  report.version = kVersion;
  report.config = Json{{"suite", cfg.suite},
                       {"dims", res.dims},
                       {"trials", cfg.trials},
                       {"seed", {{"seed", cfg.seed.seed}, {"stream", cfg.seed.stream}}},
                       {"tolerance", res.tolerance},
                       {"restarts", res.restarts},
                       {"jobs", cfg.jobs}};
  report.records = dispatch(cfg, res);
  report.summary = summarize(report.records);
  report.runtime_ms = watch.ms();

  if (!cfg.out_path.empty()) {
    write_text_atomic(cfg.out_path, report.to_json(true).dump(2) + "\n");
  }
  if (!cfg.csv_path.empty()) {
    write_text_atomic(cfg.csv_path, records_to_csv(report.records));
  }
  return report;
}

}  // namespace qce
