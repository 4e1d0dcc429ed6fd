#include "cmaf/assessment.hpp"

#include "cmaf/error.hpp"

#include <json.hpp>

#include <regex>
#include <set>
#include <sstream>

namespace cmaf {

namespace {

using nlohmann::ordered_json;

const std::regex kDatePattern{R"(^\d{4}-\d{2}-\d{2}$)"};

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::schema, path + ": " + message);
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        schema_error(path, std::string("missing field '") + key + "'");
    }
    const ordered_json& v = obj.at(key);
    if (!v.is_string()) schema_error(path, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::optional<std::string> optional_string(const ordered_json& obj, const char* key,
                                           const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj.at(key).is_string()) {
        schema_error(path, std::string("field '") + key + "' must be a string");
    }
    return obj.at(key).get<std::string>();
}

} // namespace

std::string to_string(AssessmentMethod method) {
    switch (method) {
        case AssessmentMethod::table_top: return "table_top";
        case AssessmentMethod::interview: return "interview";
        case AssessmentMethod::on_site_visit: return "on_site_visit";
        case AssessmentMethod::self_assessment: return "self_assessment";
    }
    return "?";
}

std::string to_string(ResponseStatus status) {
    switch (status) {
        case ResponseStatus::satisfied: return "satisfied";
        case ResponseStatus::partially_satisfied: return "partially_satisfied";
        case ResponseStatus::not_satisfied: return "not_satisfied";
        case ResponseStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

AssessmentMethod method_from_string(const std::string& text) {
    if (text == "table_top") return AssessmentMethod::table_top;
    if (text == "interview") return AssessmentMethod::interview;
    if (text == "on_site_visit") return AssessmentMethod::on_site_visit;
    if (text == "self_assessment") return AssessmentMethod::self_assessment;
    throw Error(ErrorKind::schema, "unknown assessment method '" + text + "'");
}

ResponseStatus status_from_string(const std::string& text) {
    if (text == "satisfied") return ResponseStatus::satisfied;
    if (text == "partially_satisfied") return ResponseStatus::partially_satisfied;
    if (text == "not_satisfied") return ResponseStatus::not_satisfied;
    if (text == "not_applicable") return ResponseStatus::not_applicable;
    throw Error(ErrorKind::schema, "unknown response status '" + text + "'");
}

Assessment parse_assessment(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::syntax, e.what());
    }

    Assessment assessment;
    assessment.assessment_id = require_string(doc, "assessment_id", "assessment");
    if (!doc.contains("org") || !doc.at("org").is_object()) {
        schema_error("assessment", "missing object field 'org'");
    }
    const ordered_json& org = doc.at("org");
    assessment.org.org_id = require_string(org, "org_id", "org");
    assessment.org.display_name = require_string(org, "display_name", "org");
    assessment.org.sector = require_string(org, "sector", "org");
    assessment.org.size_class = require_string(org, "size_class", "org");
    assessment.org.entity_kind = require_string(org, "entity_kind", "org");
    if (assessment.org.sector.empty()) schema_error("org", "sector must be non-empty");
    if (assessment.org.size_class != "small" && assessment.org.size_class != "mid" &&
        assessment.org.size_class != "large") {
        schema_error("org", "size_class must be one of small|mid|large");
    }
    if (assessment.org.entity_kind != "OES" && assessment.org.entity_kind != "DSP" &&
        assessment.org.entity_kind != "other") {
        schema_error("org", "entity_kind must be one of OES|DSP|other");
    }

    assessment.catalog_id = require_string(doc, "catalog_id", "assessment");
    assessment.catalog_version = require_string(doc, "catalog_version", "assessment");
    assessment.date = require_string(doc, "date", "assessment");
    if (!std::regex_match(assessment.date, kDatePattern)) {
        schema_error("assessment", "date must be YYYY-MM-DD");
    }

    if (!doc.contains("methods") || !doc.at("methods").is_array()) {
        schema_error("assessment", "missing array field 'methods'");
    }
    for (const ordered_json& m : doc.at("methods")) {
        if (!m.is_string()) schema_error("methods", "entries must be strings");
        assessment.methods.push_back(method_from_string(m.get<std::string>()));
    }
    if (assessment.methods.empty()) {
        schema_error("methods", "at least one assessment method is required");
    }

    if (!doc.contains("responses") || !doc.at("responses").is_array()) {
        schema_error("assessment", "missing array field 'responses'");
    }
    std::set<std::string> seen;
    for (const ordered_json& r : doc.at("responses")) {
        ControlResponse response;
        response.control_id = require_string(r, "control_id", "responses");
        const std::string path = "responses/" + response.control_id;
        response.status = status_from_string(require_string(r, "status", path));
        response.evidence = optional_string(r, "evidence", path);
        response.justification = optional_string(r, "justification", path);
        if (response.status == ResponseStatus::not_applicable && !response.justification) {
            throw Error(ErrorKind::invariant, path + ": justification required for not_applicable");
        }
        if (!seen.insert(response.control_id).second) {
            throw Error(ErrorKind::invariant,
                        path + ": duplicate response for control '" + response.control_id + "'");
        }
        assessment.responses.push_back(std::move(response));
    }
    return assessment;
}

std::string serialize_assessment(const Assessment& assessment) {
    ordered_json doc;
    doc["assessment_id"] = assessment.assessment_id;
    doc["org"] = {
        {"org_id", assessment.org.org_id},
        {"display_name", assessment.org.display_name},
        {"sector", assessment.org.sector},
        {"size_class", assessment.org.size_class},
        {"entity_kind", assessment.org.entity_kind},
    };
    doc["catalog_id"] = assessment.catalog_id;
    doc["catalog_version"] = assessment.catalog_version;
    doc["date"] = assessment.date;
    doc["methods"] = ordered_json::array();
    for (AssessmentMethod method : assessment.methods) doc["methods"].push_back(to_string(method));
    doc["responses"] = ordered_json::array();
    for (const ControlResponse& response : assessment.responses) {
        ordered_json r;
        r["control_id"] = response.control_id;
        r["status"] = to_string(response.status);
        if (response.evidence) r["evidence"] = *response.evidence;
        if (response.justification) r["justification"] = *response.justification;
        doc["responses"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

BoundAssessment bind(const Assessment& assessment, const Catalog& catalog) {
    if (assessment.catalog_id != catalog.catalog_id ||
        assessment.catalog_version != catalog.version) {
        throw Error(ErrorKind::mismatch,
                    "assessment targets catalog " + assessment.catalog_id + "/" +
                        assessment.catalog_version + " but was bound against " +
                        catalog.catalog_id + "/" + catalog.version);
    }

    BoundAssessment bound;
    bound.assessment = assessment;
    bound.catalog = &catalog;

    std::vector<std::string> unknown;
    for (const ControlResponse& response : assessment.responses) {
        if (catalog.find_control(response.control_id) == nullptr) {
            unknown.push_back(response.control_id);
        } else {
            bound.status_by_control[response.control_id] = response.status;
        }
    }
    if (!unknown.empty()) {
        std::ostringstream message;
        message << "unknown control ids:";
        for (const std::string& id : unknown) message << " " << id;
        throw Error(ErrorKind::mismatch, message.str());
    }

    std::size_t responded = 0;
    for (const Unit* unit : catalog.leaf_units()) {
        for (const Control& control : unit->controls) {
            if (bound.status_by_control.contains(control.id)) {
                ++responded;
            } else {
                bound.unanswered.push_back(control.id);
            }
        }
    }
    const std::size_t total = catalog.control_count();
    bound.coverage = total == 0 ? 0.0 : static_cast<double>(responded) / static_cast<double>(total);
    return bound;
}

} // namespace cmaf
