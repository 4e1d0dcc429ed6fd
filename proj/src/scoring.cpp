#include "cmaf/scoring.hpp"

#include "cmaf/error.hpp"
#include "cmaf/maturity.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>

namespace cmaf {

namespace {

using nlohmann::ordered_json;

bool passes_gate(ResponseStatus status, int level) {
    switch (status) {
        case ResponseStatus::satisfied:
        case ResponseStatus::not_applicable:
            return true;
        case ResponseStatus::partially_satisfied:
            // Partial implementation is exactly what level 1 describes;
            // higher gates demand full satisfaction.
            return level == 1;
        case ResponseStatus::not_satisfied:
            return false;
    }
    return false;
}

ResponseStatus effective_status(const std::map<std::string, ResponseStatus>& statuses,
                                const std::string& control_id) {
    auto it = statuses.find(control_id);
    return it == statuses.end() ? ResponseStatus::not_satisfied : it->second;
}

} // namespace

std::string to_string(GateResult gate) {
    switch (gate) {
        case GateResult::passed: return "passed";
        case GateResult::failed: return "failed";
        case GateResult::vacuous: return "vacuous";
    }
    return "?";
}

GateResult gate_from_string(const std::string& text) {
    if (text == "passed") return GateResult::passed;
    if (text == "failed") return GateResult::failed;
    if (text == "vacuous") return GateResult::vacuous;
    throw Error(ErrorKind::schema, "unknown gate result '" + text + "'");
}

int ScoreCard::requirement_level(const std::string& id) const {
    for (const auto& [rid, level] : requirements) {
        if (rid == id) return level;
    }
    throw Error(ErrorKind::usage, "no requirement '" + id + "' in score card");
}

UnitScore score_unit(const Unit& unit, const std::map<std::string, ResponseStatus>& statuses) {
    if (!unit.is_leaf()) {
        throw Error(ErrorKind::usage, "score_unit called on non-leaf unit '" + unit.id + "'");
    }

    UnitScore score;
    score.unit_id = unit.id;
    score.total_controls = static_cast<int>(unit.controls.size());
    for (const Control& control : unit.controls) {
        if (statuses.contains(control.id)) ++score.responded_controls;
    }

    for (int level = 1; level <= kMaxLevel; ++level) {
        const std::size_t idx = static_cast<std::size_t>(level - 1);
        bool any_control = false;
        bool all_pass = true;
        for (const Control& control : unit.controls) {
            if (control.level != level) continue;
            any_control = true;
            if (!passes_gate(effective_status(statuses, control.id), level)) {
                all_pass = false;
                score.failing_controls[idx].push_back(control.id);
            }
        }
        if (!any_control || unit.level_vacuous(level)) {
            score.gates[idx] = GateResult::vacuous;
        } else {
            score.gates[idx] = all_pass ? GateResult::passed : GateResult::failed;
        }
    }

    score.attained_level = 0;
    for (int level = 1; level <= kMaxLevel; ++level) {
        if (score.gates[static_cast<std::size_t>(level - 1)] == GateResult::failed) break;
        score.attained_level = level;
    }
    return score;
}

ScoreCard score_card(const BoundAssessment& bound) {
    const Catalog& catalog = *bound.catalog;
    const Assessment& assessment = bound.assessment;

    ScoreCard card;
    card.assessment_id = assessment.assessment_id;
    card.org = assessment.org;
    card.catalog_id = catalog.catalog_id;
    card.catalog_version = catalog.version;
    card.date = assessment.date;
    card.coverage = bound.coverage;

    for (const Pillar& pillar : catalog.pillars) {
        int pillar_level = kMaxLevel;
        for (const Unit& requirement : pillar.requirements) {
            int requirement_level;
            if (requirement.is_leaf()) {
                UnitScore score = score_unit(requirement, bound.status_by_control);
                requirement_level = score.attained_level;
                card.units[requirement.id] = std::move(score);
            } else {
                requirement_level = kMaxLevel;
                for (const Unit& child : requirement.children) {
                    UnitScore score = score_unit(child, bound.status_by_control);
                    requirement_level = std::min(requirement_level, score.attained_level);
                    card.units[child.id] = std::move(score);
                }
            }
            card.requirements.emplace_back(requirement.id, requirement_level);
            pillar_level = std::min(pillar_level, requirement_level);
        }
        card.pillars.emplace_back(pillar.id, pillar_level);
    }

    card.overall_level = kMaxLevel;
    long level_sum = 0;
    for (const auto& [id, level] : card.requirements) level_sum += level;
    for (const auto& [id, level] : card.pillars) {
        card.overall_level = std::min(card.overall_level, level);
    }
    card.mean_requirement_level =
        card.requirements.empty()
            ? 0.0
            : static_cast<double>(level_sum) / static_cast<double>(card.requirements.size());
    return card;
}

GapReport gap_analysis(const BoundAssessment& bound) {
    GapReport report;
    report.assessment_id = bound.assessment.assessment_id;
    for (const Unit* unit : bound.catalog->leaf_units()) {
        UnitScore score = score_unit(*unit, bound.status_by_control);

        UnitGap gap;
        gap.unit_id = unit->id;
        gap.attained_level = score.attained_level;
        gap.target_level = std::min(score.attained_level + 1, kMaxLevel);
        gap.satisfied_at_target = score.attained_level == kMaxLevel;
        if (!gap.satisfied_at_target) {
            for (const Control& control : unit->controls) {
                if (control.level > gap.target_level) continue;
                const ResponseStatus status =
                    effective_status(bound.status_by_control, control.id);
                if (status == ResponseStatus::satisfied ||
                    status == ResponseStatus::not_applicable) {
                    continue;
                }
                gap.blocking_controls.push_back({control.id, control.statement, status});
            }
        }
        report.units.push_back(std::move(gap));
    }
    return report;
}

std::string serialize_score_card(const ScoreCard& card) {
    ordered_json doc;
    doc["assessment_id"] = card.assessment_id;
    doc["org"] = {
        {"org_id", card.org.org_id},
        {"display_name", card.org.display_name},
        {"sector", card.org.sector},
        {"size_class", card.org.size_class},
        {"entity_kind", card.org.entity_kind},
    };
    doc["catalog_id"] = card.catalog_id;
    doc["catalog_version"] = card.catalog_version;
    doc["date"] = card.date;
    doc["overall_level"] = card.overall_level;
    doc["mean_requirement_level"] = card.mean_requirement_level;
    doc["coverage"] = card.coverage;
    doc["pillars"] = ordered_json::object();
    for (const auto& [id, level] : card.pillars) doc["pillars"][id] = level;
    doc["requirements"] = ordered_json::object();
    for (const auto& [id, level] : card.requirements) doc["requirements"][id] = level;
    doc["units"] = ordered_json::object();
    for (const auto& [id, score] : card.units) {
        ordered_json u;
        u["attained_level"] = score.attained_level;
        u["gates"] = ordered_json::object();
        for (int level = 1; level <= kMaxLevel; ++level) {
            u["gates"][std::to_string(level)] =
                to_string(score.gates[static_cast<std::size_t>(level - 1)]);
        }
        u["failing"] = ordered_json::object();
        for (int level = 1; level <= kMaxLevel; ++level) {
            const auto& failing = score.failing_controls[static_cast<std::size_t>(level - 1)];
            if (!failing.empty()) u["failing"][std::to_string(level)] = failing;
        }
        u["controls"] = score.total_controls;
        u["responded"] = score.responded_controls;
        doc["units"][id] = std::move(u);
    }
    return doc.dump(2) + "\n";
}

ScoreCard parse_score_card(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::syntax, e.what());
    }
    try {
        ScoreCard card;
        card.assessment_id = doc.at("assessment_id").get<std::string>();
        const ordered_json& org = doc.at("org");
        card.org.org_id = org.at("org_id").get<std::string>();
        card.org.display_name = org.at("display_name").get<std::string>();
        card.org.sector = org.at("sector").get<std::string>();
        card.org.size_class = org.at("size_class").get<std::string>();
        card.org.entity_kind = org.at("entity_kind").get<std::string>();
        card.catalog_id = doc.at("catalog_id").get<std::string>();
        card.catalog_version = doc.at("catalog_version").get<std::string>();
        card.date = doc.at("date").get<std::string>();
        card.overall_level = doc.at("overall_level").get<int>();
        card.mean_requirement_level = doc.at("mean_requirement_level").get<double>();
        card.coverage = doc.at("coverage").get<double>();
        for (const auto& [id, level] : doc.at("pillars").items()) {
            card.pillars.emplace_back(id, level.get<int>());
        }
        for (const auto& [id, level] : doc.at("requirements").items()) {
            card.requirements.emplace_back(id, level.get<int>());
        }
        for (const auto& [id, u] : doc.at("units").items()) {
            UnitScore score;
            score.unit_id = id;
            score.attained_level = u.at("attained_level").get<int>();
            for (int level = 1; level <= kMaxLevel; ++level) {
                const std::string key = std::to_string(level);
                score.gates[static_cast<std::size_t>(level - 1)] =
                    gate_from_string(u.at("gates").at(key).get<std::string>());
                if (u.at("failing").contains(key)) {
                    score.failing_controls[static_cast<std::size_t>(level - 1)] =
                        u.at("failing").at(key).get<std::vector<std::string>>();
                }
            }
            score.total_controls = u.at("controls").get<int>();
            score.responded_controls = u.at("responded").get<int>();
            card.units[id] = std::move(score);
        }
        return card;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::schema, std::string("score card: ") + e.what());
    }
}

std::string serialize_gap_report(const GapReport& report) {
    ordered_json doc;
    doc["assessment_id"] = report.assessment_id;
    doc["units"] = ordered_json::array();
    for (const UnitGap& gap : report.units) {
        ordered_json u;
        u["unit_id"] = gap.unit_id;
        u["attained_level"] = gap.attained_level;
        u["target_level"] = gap.target_level;
        u["satisfied_at_target"] = gap.satisfied_at_target;
        u["blocking_controls"] = ordered_json::array();
        for (const BlockingControl& blocking : gap.blocking_controls) {
            u["blocking_controls"].push_back({
                {"control_id", blocking.control_id},
                {"statement", blocking.statement},
                {"status", to_string(blocking.status)},
            });
        }
        doc["units"].push_back(std::move(u));
    }
    return doc.dump(2) + "\n";
}

} // namespace cmaf
