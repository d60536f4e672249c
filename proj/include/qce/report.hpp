#ifndef QCE_REPORT_HPP
#define QCE_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qce/rng.hpp"

namespace qce {

// Raised for unknown suites, out-of-range dimensions, unwritable output
// paths and similar configuration mistakes; the CLI maps it to exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { pass, fail, heuristic_pass, infinite_skip };

std::string to_string(Verdict v);

// One verified inequality or identity. For inequalities lhs and rhs are the
// two sides and slack = lhs - rhs; for identity checks lhs is the residual,
// rhs is 0 and the verdict compares the residual against the tolerance.
struct CheckRecord {
  std::string suite;
  std::int64_t instance_id = 0;
  std::string inputs_digest;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  Verdict verdict = Verdict::pass;
  double wall_ms = 0.0;
  bool identity = false;  // not serialized; feeds summary.max_residual
};

struct Summary {
  int pass = 0;
  int heuristic_pass = 0;
  int fail = 0;
  int infinite_skip = 0;
  double min_slack = 0.0;
  double max_residual = 0.0;
};

struct Report {
  std::string version;
  nlohmann::json config;
  std::vector<CheckRecord> records;
  Summary summary;
  double runtime_ms = 0.0;

  // include_timing=false zeroes wall_ms, leaving only deterministic fields.
  nlohmann::json to_json(bool include_timing = true) const;
  std::string records_dump(bool include_timing = false) const;
  bool any_fail() const { return summary.fail > 0; }
};

Summary summarize(const std::vector<CheckRecord>& records);

// Record constructors shared by the suites. Identity checks store the
// residual in lhs (rhs = 0) and pass when it is within the threshold.
CheckRecord identity_record(const std::string& suite, std::int64_t id,
                            const std::string& digest, double residual,
                            double threshold);

// lower_bounded: pass iff lhs >= rhs - tol; otherwise pass iff lhs <= rhs + tol.
// Non-finite sides classify as infinite-skip, never as fail.
CheckRecord inequality_record(const std::string& suite, std::int64_t id,
                              const std::string& digest, double lhs, double rhs,
                              double tol, bool lower_bounded, bool heuristic);

// Atomic write: temp file in the target directory, then rename.
void write_text_atomic(const std::string& path, const std::string& text);
std::string records_to_csv(const std::vector<CheckRecord>& records);

}  // namespace qce

#endif
