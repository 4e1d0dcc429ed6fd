#pragma once

#include "cmaf/catalog.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmaf {

enum class AssessmentMethod { table_top, interview, on_site_visit, self_assessment };
enum class ResponseStatus { satisfied, partially_satisfied, not_satisfied, not_applicable };

std::string to_string(AssessmentMethod method);
std::string to_string(ResponseStatus status);
AssessmentMethod method_from_string(const std::string& text);
ResponseStatus status_from_string(const std::string& text);

struct OrgProfile {
    std::string org_id;
    std::string display_name;
    std::string sector;
    std::string size_class;   // small | mid | large
    std::string entity_kind;  // OES | DSP | other
};

struct ControlResponse {
    std::string control_id;
    ResponseStatus status = ResponseStatus::not_satisfied;
    std::optional<std::string> evidence;
    std::optional<std::string> justification;  // required when not_applicable
};

struct Assessment {
    std::string assessment_id;
    OrgProfile org;
    std::string catalog_id;
    std::string catalog_version;
    std::string date;  // YYYY-MM-DD
    std::vector<AssessmentMethod> methods;
    std::vector<ControlResponse> responses;
};

/// An assessment whose every response resolves to a catalog control.
struct BoundAssessment {
    Assessment assessment;
    const Catalog* catalog = nullptr;
    double coverage = 0.0;  // responded controls / total controls
    std::map<std::string, ResponseStatus> status_by_control;
    std::vector<std::string> unanswered;  // catalog order; scored as not_satisfied
};

Assessment parse_assessment(const std::string& text);
std::string serialize_assessment(const Assessment& assessment);

/// Resolves every response against the catalog.
/// Throws Error{mismatch} on catalog id/version mismatch or unknown control ids.
BoundAssessment bind(const Assessment& assessment, const Catalog& catalog);

} // namespace cmaf
