#include "qrefute/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace qrefute {

std::string_view to_string(Verdict v) {
  return v == Verdict::claimed_sat ? "claimed_sat" : "unsat";
}

std::string_view to_string(OracleStatus s) {
  return s == OracleStatus::sat ? "sat" : "unsat";
}

std::string_view to_string(OracleMethod m) {
  return m == OracleMethod::truth_table ? "truth_table" : "dpll";
}

nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json j{
      {"verdict", to_string(r.verdict)},
      {"iterations", r.iterations},
      {"added_per_iteration", r.added_per_iteration},
      {"discarded_long", r.discarded_long},
      {"discarded_tautologies", r.discarded_tautologies},
      {"final_db_size", r.final_db_size},
      {"elapsed_seconds", r.elapsed_seconds},
  };
  if (r.contradiction_variable)
    j["contradiction_variable"] = *r.contradiction_variable;
  else
    j["contradiction_variable"] = nullptr;
  if (!r.trace.empty()) {
    nlohmann::json trace = nlohmann::json::array();
    for (const IterationRecord& rec : r.trace) {
      trace.push_back({{"added", rec.added},
                       {"discarded_long", rec.discarded_long},
                       {"discarded_tautologies", rec.discarded_tautologies},
                       {"db_size", rec.db_size}});
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

nlohmann::json to_json(const OracleVerdict& v) {
  return {{"status", to_string(v.status)},
          {"method", to_string(v.method)},
          {"decisions", v.decisions},
          {"propagations", v.propagations}};
}

DiscrepancyReport make_discrepancy_report(std::string instance_id,
                                          nlohmann::json generator,
                                          const SolveReport& engine,
                                          const OracleVerdict* oracle) {
  DiscrepancyReport r;
  r.instance_id = std::move(instance_id);
  r.generator = std::move(generator);
  r.engine_verdict = std::string(to_string(engine.verdict));
  r.engine_report = engine;
  if (oracle) {
    r.oracle = *oracle;
    r.oracle_verdict = std::string(to_string(oracle->status));
    r.mismatch = engine.verdict == Verdict::claimed_sat &&
                 oracle->status == OracleStatus::unsat;
    r.soundness_failure = engine.verdict == Verdict::unsat &&
                          oracle->status == OracleStatus::sat;
  } else {
    r.oracle_verdict = "inconclusive";
  }
  return r;
}

nlohmann::json to_json(const DiscrepancyReport& r) {
  nlohmann::json j{
      {"instance_id", r.instance_id},
      {"generator", r.generator},
      {"engine_verdict", r.engine_verdict},
      {"oracle_verdict", r.oracle_verdict},
      {"mismatch", r.mismatch},
      {"soundness_failure", r.soundness_failure},
      {"engine_report", to_json(r.engine_report)},
  };
  j["oracle_stats"] = r.oracle ? to_json(*r.oracle) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"tool", m.tool},          {"version", m.version},
          {"command", m.command},    {"config", m.config},
          {"outputs", m.outputs},    {"created", m.created}};
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

std::string current_timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qrefute
