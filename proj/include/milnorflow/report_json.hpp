#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "milnorflow/invariants.hpp"
#include "milnorflow/model.hpp"

namespace milnorflow {

inline constexpr const char* kToolVersion = "0.3.0";

struct ReportEnvelope {
  std::string tool_version = kToolVersion;
  std::string input_polynomial;
  std::string canonical_polynomial;
  std::string order;
  std::vector<std::string> groebner_basis;
  SingularityReport report;
  std::optional<std::vector<verify::VerificationRecord>> verification;
  // Only filled when timing is requested; it is the one field that differs
  // between runs.
  std::map<std::string, std::int64_t> timing_ms;
};

using Json = nlohmann::ordered_json;

Json to_json(const verify::VerificationRecord& rec);
verify::VerificationRecord verification_from_json(const Json& j);

// Key order is fixed, so dump() is a byte-stable encoding.
Json to_json(const ReportEnvelope& env);
// Inverse of to_json. Throws InvalidInput on malformed documents.
ReportEnvelope envelope_from_json(const Json& j);

}  // namespace milnorflow
