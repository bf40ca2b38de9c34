#pragma once

// Report serialization: JSON and text forms of a CompletenessReport, and
// the counterexample trace format read back by `explain`.

#include <string>

#include <json.hpp>

#include "ccheck/checker.hpp"

namespace ccheck {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Process exit code for a finished check: 3 if a gating driver is
/// infeasible or the bounds leave no states, 1 if one is invalid or has an
/// unprovable callee precondition, 5 if one hit the branch cap, else 0.
int exit_code(const CompletenessReport& r);

Json state_to_json(const ObjectState& s, const ContractClass& cls);
/// Throws Error(StaleTrace) if the components do not match `cls`.
ObjectState state_from_json(const Json& j, const ContractClass& cls);

Json counterexample_to_json(const Counterexample& cex, const SpecDriver& d, const ContractClass& cls);
/// Throws Error(MalformedTrace) on structural problems and
/// Error(StaleTrace) when the trace does not fit `d` / `cls`.
Counterexample counterexample_from_json(const Json& j, const SpecDriver& d, const ContractClass& cls);
/// Name of the driver a trace belongs to. Throws Error(MalformedTrace).
std::string trace_driver(const Json& j);
/// Parses trace text. Throws Error(MalformedTrace).
Json parse_trace(const std::string& text);

Json report_to_json(const CompletenessReport& r, const DriverSuite& suite, const ContractClass& cls);
std::string report_to_text(const CompletenessReport& r, const DriverSuite& suite);

}  // namespace ccheck
