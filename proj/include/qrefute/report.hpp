#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qrefute/engine.hpp"
#include "qrefute/oracle.hpp"

namespace qrefute {

std::string_view to_string(Verdict v);
std::string_view to_string(OracleStatus s);
std::string_view to_string(OracleMethod m);

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const OracleVerdict& v);  // stats summary, no model

// One differential-run record: the engine's claim against the oracle's
// ground truth. mismatch marks the expected failure mode (engine claims sat,
// oracle proves unsat); the reverse direction would break the procedure's
// soundness and is flagged fatally.
struct DiscrepancyReport {
  std::string instance_id;
  nlohmann::json generator;
  std::string engine_verdict;
  std::string oracle_verdict;  // sat | unsat | inconclusive
  bool mismatch = false;
  bool soundness_failure = false;
  SolveReport engine_report;
  std::optional<OracleVerdict> oracle;
};

DiscrepancyReport make_discrepancy_report(std::string instance_id,
                                          nlohmann::json generator,
                                          const SolveReport& engine,
                                          const OracleVerdict* oracle);

nlohmann::json to_json(const DiscrepancyReport& r);

// Enough to replay a run bit-identically, timings aside.
struct RunManifest {
  std::string tool = "qrefute";
  std::string version;
  std::string command;
  nlohmann::json config;
  nlohmann::json outputs;  // per-file name, digest, sizes
  std::string created;     // ISO 8601 UTC
};

nlohmann::json to_json(const RunManifest& m);

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);
std::string current_timestamp_utc();

}  // namespace qrefute
