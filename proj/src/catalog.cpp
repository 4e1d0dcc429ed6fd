#include "cmaf/catalog.hpp"

#include "cmaf/error.hpp"
#include "cmaf/maturity.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <string>

namespace cmaf {

namespace detail {
const char* builtin_catalog_json();
}

namespace {

using nlohmann::ordered_json;

const std::regex kUnitIdPattern{R"(^[A-Z][0-9]+(\.[0-9]+)?$)"};
const std::regex kControlIdPattern{R"(^([A-Z][0-9]+(?:\.[0-9]+)?)-L([1-5])-([0-9]{2})$)"};

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::schema, path + ": " + message);
}

const ordered_json& require_field(const ordered_json& obj, const char* key,
                                  const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) schema_error(path, std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& path) {
    const ordered_json& v = require_field(obj, key, path);
    if (!v.is_string()) schema_error(path, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

int require_int(const ordered_json& obj, const char* key, const std::string& path) {
    const ordered_json& v = require_field(obj, key, path);
    if (!v.is_number_integer()) schema_error(path, std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

Control parse_control(const ordered_json& doc, const std::string& unit_path) {
    Control control;
    control.id = require_string(doc, "id", unit_path);
    const std::string path = unit_path + "/" + control.id;
    control.level = require_int(doc, "level", path);
    control.statement = require_string(doc, "statement", path);
    if (doc.contains("guidance")) {
        if (!doc.at("guidance").is_string()) schema_error(path, "field 'guidance' must be a string");
        control.guidance = doc.at("guidance").get<std::string>();
    }
    if (doc.contains("translations")) {
        const ordered_json& tr = doc.at("translations");
        if (!tr.is_object()) schema_error(path, "field 'translations' must be an object");
        for (const auto& [lang, text] : tr.items()) {
            if (!text.is_string()) schema_error(path, "translation for '" + lang + "' must be a string");
            control.translations[lang] = text.get<std::string>();
        }
    }
    return control;
}

Unit parse_unit(const ordered_json& doc, const std::string& parent_path) {
    Unit unit;
    unit.id = require_string(doc, "id", parent_path);
    const std::string path = parent_path.empty() ? unit.id : parent_path + "/" + unit.id;
    unit.title = require_string(doc, "title", path);
    if (doc.contains("controls")) {
        const ordered_json& arr = doc.at("controls");
        if (!arr.is_array()) schema_error(path, "field 'controls' must be an array");
        for (const ordered_json& c : arr) unit.controls.push_back(parse_control(c, path));
    }
    if (doc.contains("sub_requirements")) {
        const ordered_json& arr = doc.at("sub_requirements");
        if (!arr.is_array()) schema_error(path, "field 'sub_requirements' must be an array");
        for (const ordered_json& child : arr) unit.children.push_back(parse_unit(child, path));
    }
    if (doc.contains("vacuous_levels")) {
        const ordered_json& arr = doc.at("vacuous_levels");
        if (!arr.is_array()) schema_error(path, "field 'vacuous_levels' must be an array");
        for (const ordered_json& v : arr) {
            if (!v.is_number_integer()) schema_error(path, "vacuous_levels entries must be integers");
            unit.vacuous_levels.push_back(v.get<int>());
        }
    }
    return unit;
}

ordered_json control_to_json(const Control& control) {
    ordered_json doc;
    doc["id"] = control.id;
    doc["level"] = control.level;
    doc["statement"] = control.statement;
    if (control.guidance) doc["guidance"] = *control.guidance;
    if (!control.translations.empty()) {
        ordered_json tr = ordered_json::object();
        for (const auto& [lang, text] : control.translations) tr[lang] = text;
        doc["translations"] = tr;
    }
    return doc;
}

ordered_json unit_to_json(const Unit& unit) {
    ordered_json doc;
    doc["id"] = unit.id;
    doc["title"] = unit.title;
    if (!unit.children.empty()) {
        ordered_json arr = ordered_json::array();
        for (const Unit& child : unit.children) arr.push_back(unit_to_json(child));
        doc["sub_requirements"] = arr;
    }
    if (!unit.controls.empty()) {
        ordered_json arr = ordered_json::array();
        for (const Control& control : unit.controls) arr.push_back(control_to_json(control));
        doc["controls"] = arr;
    }
    if (!unit.vacuous_levels.empty()) doc["vacuous_levels"] = unit.vacuous_levels;
    return doc;
}

struct Validator {
    ValidationReport report;
    std::map<std::string, std::string> control_paths;  // control id -> first path
    std::set<std::string> unit_ids;

    void error(const std::string& path, const std::string& message) {
        report.findings.push_back({Severity::error, path, message});
    }
    void warning(const std::string& path, const std::string& message) {
        report.findings.push_back({Severity::warning, path, message});
    }

    void check_unit(const Unit& unit, const std::string& parent_id, const std::string& path) {
        if (!std::regex_match(unit.id, kUnitIdPattern)) {
            error(path, "unit id '" + unit.id + "' does not match the id grammar");
        }
        if (!unit_ids.insert(unit.id).second) {
            error(path, "duplicate unit id '" + unit.id + "'");
        }
        if (!parent_id.empty()) {
            const std::string prefix = parent_id + ".";
            if (unit.id.rfind(prefix, 0) != 0) {
                error(path, "child id '" + unit.id + "' does not extend parent id '" + parent_id + "'");
            }
        }
        if (!unit.controls.empty() && !unit.children.empty()) {
            error(path, "unit has controls and children");
        }
        if (unit.controls.empty() && unit.children.empty()) {
            error(path, "unit has neither controls nor children");
        }
        std::set<int> vacuous;
        for (int level : unit.vacuous_levels) {
            if (level < 1 || level > kMaxLevel) {
                error(path, "vacuous level " + std::to_string(level) + " out of range 1..5");
            } else if (!vacuous.insert(level).second) {
                error(path, "vacuous level " + std::to_string(level) + " listed twice");
            }
        }
        if (!unit.children.empty() && !unit.vacuous_levels.empty()) {
            error(path, "vacuous_levels on a unit with sub-requirements");
        }

        std::set<int> populated;
        for (const Control& control : unit.controls) {
            check_control(control, unit, path);
            populated.insert(control.level);
        }
        if (unit.children.empty()) {
            for (int level = 1; level <= kMaxLevel; ++level) {
                const bool marked = vacuous.contains(level);
                if (populated.contains(level) && marked) {
                    error(path, "level " + std::to_string(level) + " is marked vacuous but has controls");
                } else if (!populated.contains(level) && !marked) {
                    warning(path, "no controls at level " + std::to_string(level) +
                                      " and no vacuous marker");
                }
            }
            if (vacuous.size() == static_cast<std::size_t>(kMaxLevel)) {
                warning(path, "every level is vacuous; unit attains level 5 unconditionally");
            }
        }
        for (const Unit& child : unit.children) {
            check_unit(child, unit.id, path + "/" + child.id);
        }
    }

    void check_control(const Control& control, const Unit& unit, const std::string& unit_path) {
        const std::string path = unit_path + "/" + control.id;
        if (control.level < 1 || control.level > kMaxLevel) {
            error(path, "control level must be 1..5");
        }
        std::smatch match;
        if (!std::regex_match(control.id, match, kControlIdPattern)) {
            error(path, "control id '" + control.id + "' does not match the id grammar");
        } else {
            if (match[1].str() != unit.id) {
                error(path, "control id names unit '" + match[1].str() + "' but belongs to '" +
                                unit.id + "'");
            }
            if (std::stoi(match[2].str()) != control.level) {
                error(path, "control id level L" + match[2].str() + " disagrees with level field " +
                                std::to_string(control.level));
            }
        }
        if (control.statement.empty()) error(path, "empty control statement");
        auto [it, inserted] = control_paths.emplace(control.id, path);
        if (!inserted) {
            error(path, "duplicate control id '" + control.id + "' (also at " + it->second + ")");
        }
    }
};

} // namespace

const std::string& Control::statement_for(const std::string& lang) const {
    if (auto it = translations.find(lang); it != translations.end()) return it->second;
    return statement;
}

bool Unit::level_vacuous(int level) const {
    return std::find(vacuous_levels.begin(), vacuous_levels.end(), level) != vacuous_levels.end();
}

std::vector<const Unit*> Catalog::leaf_units() const {
    std::vector<const Unit*> leaves;
    for (const Pillar& pillar : pillars) {
        for (const Unit& requirement : pillar.requirements) {
            if (requirement.is_leaf()) {
                leaves.push_back(&requirement);
            } else {
                for (const Unit& child : requirement.children) leaves.push_back(&child);
            }
        }
    }
    return leaves;
}

std::vector<const Unit*> Catalog::requirement_units() const {
    std::vector<const Unit*> requirements;
    for (const Pillar& pillar : pillars) {
        for (const Unit& requirement : pillar.requirements) requirements.push_back(&requirement);
    }
    return requirements;
}

const Control* Catalog::find_control(const std::string& control_id) const {
    for (const Unit* unit : leaf_units()) {
        for (const Control& control : unit->controls) {
            if (control.id == control_id) return &control;
        }
    }
    return nullptr;
}

std::size_t Catalog::control_count() const {
    std::size_t count = 0;
    for (const Unit* unit : leaf_units()) count += unit->controls.size();
    return count;
}

Catalog parse_catalog(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::syntax, e.what());
    }

    Catalog catalog;
    catalog.catalog_id = require_string(doc, "catalog_id", "catalog");
    catalog.version = require_string(doc, "version", "catalog");
    const ordered_json& pillars = require_field(doc, "pillars", "catalog");
    if (!pillars.is_array()) schema_error("catalog", "field 'pillars' must be an array");
    for (const ordered_json& p : pillars) {
        Pillar pillar;
        pillar.id = require_string(p, "id", "catalog");
        pillar.title = require_string(p, "title", pillar.id);
        const ordered_json& reqs = require_field(p, "requirements", pillar.id);
        if (!reqs.is_array()) schema_error(pillar.id, "field 'requirements' must be an array");
        for (const ordered_json& r : reqs) pillar.requirements.push_back(parse_unit(r, ""));
        catalog.pillars.push_back(std::move(pillar));
    }

    ValidationReport report = validate_catalog(catalog);
    for (const Finding& finding : report.findings) {
        if (finding.severity == Severity::error) {
            throw Error(ErrorKind::invariant, finding.path + ": " + finding.message);
        }
    }
    return catalog;
}

std::string serialize_catalog(const Catalog& catalog) {
    ordered_json doc;
    doc["catalog_id"] = catalog.catalog_id;
    doc["version"] = catalog.version;
    doc["pillars"] = ordered_json::array();
    for (const Pillar& pillar : catalog.pillars) {
        ordered_json p;
        p["id"] = pillar.id;
        p["title"] = pillar.title;
        p["requirements"] = ordered_json::array();
        for (const Unit& requirement : pillar.requirements) {
            p["requirements"].push_back(unit_to_json(requirement));
        }
        doc["pillars"].push_back(std::move(p));
    }
    return doc.dump(2) + "\n";
}

ValidationReport validate_catalog(const Catalog& catalog) {
    Validator validator;
    if (catalog.catalog_id.empty()) validator.error("catalog", "empty catalog_id");
    if (catalog.version.empty()) validator.error("catalog", "empty version");
    if (catalog.pillars.empty()) validator.error("catalog", "catalog has no pillars");

    std::set<std::string> pillar_ids;
    int next_requirement_number = 1;
    for (const Pillar& pillar : catalog.pillars) {
        if (pillar.id.size() != 1 || pillar.id[0] < 'A' || pillar.id[0] > 'Z') {
            validator.error(pillar.id, "pillar id must be a single uppercase letter");
        }
        if (!pillar_ids.insert(pillar.id).second) {
            validator.error(pillar.id, "duplicate pillar id");
        }
        if (pillar.title.empty()) validator.error(pillar.id, "empty pillar title");
        if (pillar.requirements.empty()) validator.error(pillar.id, "pillar has no requirements");
        for (const Unit& requirement : pillar.requirements) {
            if (requirement.id.rfind(pillar.id, 0) != 0) {
                validator.error(requirement.id, "requirement id does not start with pillar id '" +
                                                    pillar.id + "'");
            }
            // Requirement numbering runs contiguously across pillars (A1..,
            // then B picks up where A stopped).
            const std::string expected =
                pillar.id + std::to_string(next_requirement_number);
            if (requirement.id != expected) {
                validator.error(requirement.id, "requirement id out of sequence; expected '" +
                                                    expected + "'");
            }
            ++next_requirement_number;
            validator.check_unit(requirement, "", requirement.id);
        }
    }
    return validator.report;
}

const Catalog& builtin_catalog() {
    static const Catalog catalog = parse_catalog(detail::builtin_catalog_json());
    return catalog;
}

} // namespace cmaf
