#ifndef QCE_SUITES_HPP
#define QCE_SUITES_HPP

#include "qce/report.hpp"

namespace qce {

struct SuiteConfig {
  std::string suite;
  std::vector<int> dims;     // empty -> per-suite default; supported range 2..8
  int trials = 100;
  RngSeed seed;
  double tolerance = 0.0;    // 0 -> per-suite default
  int restarts = 0;          // 0 -> per-suite default (optimizer-backed suites)
  int jobs = 1;
  std::string out_path;      // optional report JSON
  std::string csv_path;      // optional flattened records
};

const std::vector<std::string>& suite_names();

Report run_suite(const SuiteConfig& cfg);

}  // namespace qce

#endif
