#pragma once

#include <string>
#include <vector>

#include "rictube/assembly.hpp"
#include "rictube/curvature.hpp"
#include "rictube/oracle.hpp"
#include "rictube/profile.hpp"
#include "rictube/report.hpp"

namespace rictube {

/// Profiles serialize to {"domain":[lo,hi],"segments":[...]} with segment
/// kinds "sine_arc" {a,b}, "constant" {c}, "quintic_hermite" {left, right}
/// (2-jets at the endpoints), each carrying "from"/"to".  Doubles round-trip
/// exactly.
std::string to_json_string(const Profile& p);
Profile profile_from_json_string(const std::string& text);

std::string to_json_string(const ConditionReport& rep);
std::string to_json_string(const QuotientReport& rep);
std::string to_json_string(const MatchReport& rep);
std::string to_json_string(const TubeParams& p);
TubeParams tube_params_from_json_string(const std::string& text);

/// Self-contained design document: parameters, both profiles, verification
/// report.  verify-tube re-reads this.
struct TubeDocument {
  TubeParams params;
  Profile f;
  Profile h;
};
std::string tube_document_to_json_string(const TubeParams& params, const Profile& f,
                                         const Profile& h, const ConditionReport& report,
                                         const std::string& config_echo_json);
TubeDocument tube_document_from_json_string(const std::string& text);

std::string comparison_rows_to_json_string(const std::vector<oracle::ComparisonRow>& rows,
                                           const std::string& config_echo_json);

}  // namespace rictube

namespace rictube::assembly {

std::string to_json_string(const FeasibilityReport& rep, const std::string& config_echo_json);
AssemblyConfig config_from_json_string(const std::string& text);
std::string to_json_string(const AssemblyConfig& cfg);

}  // namespace rictube::assembly
