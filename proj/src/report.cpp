#include "qce/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qce {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::heuristic_pass: return "heuristic-pass";
    case Verdict::infinite_skip: return "infinite-skip";
  }
  return "unknown";
}

namespace {

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json record_to_json(const CheckRecord& r, bool include_timing) {
  return nlohmann::json{{"suite", r.suite},
                        {"instance_id", r.instance_id},
                        {"inputs_digest", r.inputs_digest},
                        {"lhs", finite_or_null(r.lhs)},
                        {"rhs", finite_or_null(r.rhs)},
                        {"slack", finite_or_null(r.slack)},
                        {"verdict", to_string(r.verdict)},
                        {"wall_ms", include_timing ? r.wall_ms : 0.0}};
}

}  // namespace

Summary summarize(const std::vector<CheckRecord>& records) {
  Summary s;
  s.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    switch (r.verdict) {
      case Verdict::pass: ++s.pass; break;
      case Verdict::heuristic_pass: ++s.heuristic_pass; break;
      case Verdict::fail: ++s.fail; break;
      case Verdict::infinite_skip: ++s.infinite_skip; break;
    }
    if (std::isfinite(r.slack)) s.min_slack = std::min(s.min_slack, r.slack);
    if (r.identity && std::isfinite(r.lhs)) {
      s.max_residual = std::max(s.max_residual, std::abs(r.lhs));
    }
  }
  if (!std::isfinite(s.min_slack)) s.min_slack = 0.0;
  return s;
}

CheckRecord identity_record(const std::string& suite, std::int64_t id,
                            const std::string& digest, double residual,
                            double threshold) {
  CheckRecord r;
  r.suite = suite;
  r.instance_id = id;
  r.inputs_digest = digest;
  r.lhs = residual;
  r.rhs = 0.0;
  r.slack = residual;
  r.identity = true;
  r.verdict = residual <= threshold ? Verdict::pass : Verdict::fail;
  return r;
}

CheckRecord inequality_record(const std::string& suite, std::int64_t id,
                              const std::string& digest, double lhs, double rhs,
                              double tol, bool lower_bounded, bool heuristic) {
  CheckRecord r;
  r.suite = suite;
  r.instance_id = id;
  r.inputs_digest = digest;
  r.lhs = lhs;
  r.rhs = rhs;
  if (std::isfinite(lhs) && std::isfinite(rhs)) {
    r.slack = lhs - rhs;
    bool ok = lower_bounded ? r.slack >= -tol : r.slack <= tol;
    r.verdict = !ok ? Verdict::fail : (heuristic ? Verdict::heuristic_pass : Verdict::pass);
  } else {
    r.slack = std::numeric_limits<double>::quiet_NaN();
    r.verdict = Verdict::infinite_skip;
  }
  return r;
}

nlohmann::json Report::to_json(bool include_timing) const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) recs.push_back(record_to_json(r, include_timing));
  return nlohmann::json{
      {"version", version},
      {"config", config},
      {"records", recs},
      {"summary",
       {{"pass", summary.pass},
        {"heuristic_pass", summary.heuristic_pass},
        {"fail", summary.fail},
        {"infinite_skip", summary.infinite_skip},
        {"min_slack", finite_or_null(summary.min_slack)},
        {"max_residual", finite_or_null(summary.max_residual)}}},
      {"runtime_ms", include_timing ? runtime_ms : 0.0}};
}

std::string Report::records_dump(bool include_timing) const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) recs.push_back(record_to_json(r, include_timing));
  return recs.dump();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output path: " + tmp);
    out << text;
    if (!out.flush()) throw ConfigError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ConfigError("cannot rename report into place: " + path);
  }
}

std::string records_to_csv(const std::vector<CheckRecord>& records) {
  std::ostringstream out;
  out << "suite,instance_id,inputs_digest,lhs,rhs,slack,verdict,wall_ms\n";
  out.precision(17);
  for (const auto& r : records) {
    out << r.suite << ',' << r.instance_id << ',' << r.inputs_digest << ',' << r.lhs << ','
        << r.rhs << ',' << r.slack << ',' << to_string(r.verdict) << ',' << r.wall_ms
        << '\n';
  }
  return out.str();
}

}  // namespace qce
