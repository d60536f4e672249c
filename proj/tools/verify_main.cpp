#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "qce/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"verify - run named check suites over seeded random instances"};

  qce::SuiteConfig cfg;
  bool list = false;
  std::uint64_t seed = 0;

  app.add_option("--suite", cfg.suite, "suite name (see --list)");
  app.add_option("--dims", cfg.dims, "dimensions, e.g. --dims 2,3")->delimiter(',');
  app.add_option("--trials", cfg.trials, "instances per dimension")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "base seed (env VERIFY_SEED overrides)");
  app.add_option("--tol", cfg.tolerance, "verdict tolerance (default per suite)");
  app.add_option("--restarts", cfg.restarts, "optimizer restarts (default per suite)");
  app.add_option("--jobs", cfg.jobs, "worker threads for trials")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_path, "write the JSON report here");
  app.add_option("--csv", cfg.csv_path, "write flattened records as CSV here");
  app.add_flag("--list", list, "list registered suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list) {
    for (const auto& name : qce::suite_names()) std::cout << name << "\n";
    return 0;
  }
  if (cfg.suite.empty()) {
    std::cerr << "error: --suite is required (try --list)\n";
    return 2;
  }

  if (const char* env = std::getenv("VERIFY_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }
  cfg.seed = qce::RngSeed{seed, 0};

  try {
    qce::Report report = qce::run_suite(cfg);
    const auto& s = report.summary;
    std::cout << "suite=" << cfg.suite << " records=" << report.records.size()
              << " pass=" << s.pass << " heuristic_pass=" << s.heuristic_pass
              << " fail=" << s.fail << " infinite_skip=" << s.infinite_skip << "\n"
              << "min_slack=" << s.min_slack << " max_residual=" << s.max_residual
              << " runtime_ms=" << report.runtime_ms << "\n";
    if (!cfg.out_path.empty()) std::cout << "report: " << cfg.out_path << "\n";
    if (!cfg.csv_path.empty()) std::cout << "csv: " << cfg.csv_path << "\n";
    return report.any_fail() ? 1 : 0;
  } catch (const qce::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
