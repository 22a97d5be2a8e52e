#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nc/json_io.hpp"
#include "nc/kernels.hpp"

namespace nc {

/// Named verification run.  `parameters` and `tolerances` override the
/// scenario's documented defaults; unknown parameter keys and unknown
/// tolerance labels are rejected with std::invalid_argument.
struct ScenarioConfig {
  std::string name;
  std::map<std::string, std::string> parameters;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;
  ExecPolicy policy = ExecPolicy::Serial;
  /// Include solver witness matrices in the report payload.
  bool dump_witness = false;
};

/// One measured quantity against its threshold.  kind is "upper" (pass when
/// value <= threshold), "lower" (value >= threshold) or "equal" (exact match,
/// used for integer-valued checks; not tolerance-overridable).
struct ScenarioCheck {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  std::string kind;
  bool pass = false;
};

struct ScenarioReport {
  std::string name;
  /// Resolved parameters after defaults — the config echo.
  std::map<std::string, std::string> parameters;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;
  ExecPolicy policy = ExecPolicy::Serial;
  bool dump_witness = false;
  std::vector<ScenarioCheck> checks;
  /// Scenario-specific payload (witness matrices, membership tables, ...).
  Json extra = Json::object();
  /// Conjunction of the per-check passes.
  bool pass = false;
  /// Wall-clock time; the one field excluded from the determinism guarantee.
  double duration_ms = 0.0;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::map<std::string, std::string> parameter_defaults;
  std::map<std::string, double> tolerance_defaults;
};

/// Registered scenarios in a fixed documented order.
const std::vector<ScenarioInfo>& list_scenarios();

/// Lookup by name; throws std::invalid_argument for unknown names.
const ScenarioInfo& scenario_info(const std::string& name);

/// Runs one scenario.  Throws std::invalid_argument for unknown names,
/// unknown parameter keys or tolerance labels, and malformed parameter
/// values — the caller maps those to usage errors.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// JSON contract: config echo, per-check entries, overall pass, payload;
/// duration_ms is emitted last so reports are comparable without it.
Json report_to_json(const ScenarioReport& report);

/// Human-readable table for terminal output.
std::string report_to_text(const ScenarioReport& report);

}  // namespace nc
