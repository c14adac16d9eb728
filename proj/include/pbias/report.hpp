#pragma once

// Machine-readable run reports.  Integers are serialized as decimal strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "pbias/identities.hpp"
#include "pbias/inequality.hpp"

namespace pbias {

inline constexpr const char* kArtifactName = "parity_bias_lab";
inline constexpr const char* kArtifactVersion = "0.1.0";

struct ReportConfig {
  int max_n = 200;
  int order = 200;
  OracleLimits limits;
};

nlohmann::json to_json(const InequalityReport& report);
nlohmann::json to_json(const CheckResult& result);

/// One record per check; kind is "theorem", "conjecture", "identity",
/// "relation", "oracle", "injection" or "sequence".
nlohmann::json make_record(std::string id, std::string kind, nlohmann::json params, nlohmann::json body,
                           double elapsed_ms);

/// Every theorem, identity, relation, oracle and sequence check in catalog
/// order.  Tier disagreements become records with "tier_disagreement": true.
nlohmann::json run_report_all(const ReportConfig& config);

/// 0 if every record holds, 2 if any record reports a tier disagreement,
/// 1 otherwise.
int report_exit_code(const nlohmann::json& report);

/// Copy of the report with every elapsed_ms field removed.
nlohmann::json without_timings(nlohmann::json report);

}  // namespace pbias
