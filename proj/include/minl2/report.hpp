#pragma once

// JSON verdict records and deterministic artifact writing.

#include "minl2/config.hpp"
#include "minl2/jets.hpp"

#include <json.hpp>

#include <string>

namespace minl2 {

using Json = nlohmann::ordered_json;

/// Echo of the configuration every report starts with.
Json describe_config(const ExperimentConfig& cfg);

Json to_json(const GCurve& curve);
Json to_json(const ConcavityVerdict& v);
Json to_json(const DerivativeVerdict& v);
Json to_json(const TailCheck& v);
Json to_json(const LinearReport& r);
Json to_json(const JetEqualityReport& r);
Json to_json(const SuitaReport& r);
Json to_json(const PowerReport& r);
Json to_json(const AuxSuiteReport& r);
Json to_json(const MinimalSolution& s);
Json to_json(const CapacityResult& c);

/// {"error": {"kind": ..., "message": ...}}
Json error_record(const Error& e);

/// Two-space indented dump with a trailing newline; NaN and infinities become null.
std::string dump(const Json& j);

/// Creates `dir` when needed and writes `text` to dir/name; returns the path.
std::string write_artifact(const std::string& dir, const std::string& name, const std::string& text);

}  // namespace minl2
