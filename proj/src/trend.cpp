#include "cmaf/trend.hpp"

#include "cmaf/error.hpp"
#include "cmaf/maturity.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace cmaf {

TrendReport diff(const ScoreCard& earlier, const ScoreCard& later) {
    if (earlier.org.org_id != later.org.org_id) {
        throw Error(ErrorKind::mismatch, "score cards belong to different organizations: '" +
                                             earlier.org.org_id + "' vs '" + later.org.org_id + "'");
    }
    if (earlier.catalog_id != later.catalog_id ||
        earlier.catalog_version != later.catalog_version) {
        throw Error(ErrorKind::mismatch,
                    "score cards were produced against different catalog versions");
    }
    if (earlier.date > later.date) {
        throw Error(ErrorKind::mismatch, "earlier card is dated after the later card (" +
                                             earlier.date + " > " + later.date + ")");
    }

    TrendReport report;
    report.org_id = earlier.org.org_id;
    report.earlier_assessment_id = earlier.assessment_id;
    report.earlier_date = earlier.date;
    report.later_assessment_id = later.assessment_id;
    report.later_date = later.date;
    report.overall_delta = later.overall_level - earlier.overall_level;

    std::map<std::string, int> later_levels;
    for (const auto& [id, level] : later.requirements) later_levels[id] = level;
    std::map<std::string, int> earlier_levels;
    for (const auto& [id, level] : earlier.requirements) earlier_levels[id] = level;

    for (const auto& [id, level] : earlier.requirements) {
        auto it = later_levels.find(id);
        if (it == later_levels.end()) {
            report.only_in_earlier.push_back(id);
            continue;
        }
        const int delta = it->second - level;
        report.per_requirement_delta.emplace_back(id, delta);
        if (delta < 0) report.regressions.push_back(id);
        if (delta > 0) report.improvements.push_back(id);
    }
    for (const auto& [id, level] : later.requirements) {
        if (!earlier_levels.contains(id)) report.only_in_later.push_back(id);
    }
    return report;
}

std::string serialize_trend_report(const TrendReport& report) {
    nlohmann::ordered_json doc;
    doc["org_id"] = report.org_id;
    doc["earlier"] = {{"assessment_id", report.earlier_assessment_id},
                      {"date", report.earlier_date}};
    doc["later"] = {{"assessment_id", report.later_assessment_id}, {"date", report.later_date}};
    doc["overall_delta"] = report.overall_delta;
    doc["per_requirement_delta"] = nlohmann::ordered_json::object();
    for (const auto& [id, delta] : report.per_requirement_delta) {
        doc["per_requirement_delta"][id] = delta;
    }
    doc["regressions"] = report.regressions;
    doc["improvements"] = report.improvements;
    doc["only_in_earlier"] = report.only_in_earlier;
    doc["only_in_later"] = report.only_in_later;
    return doc.dump(2) + "\n";
}

std::string render_trend_markdown(const TrendReport& report) {
    std::ostringstream out;
    out << "# Progress report for " << report.org_id << "\n\n";
    out << "Comparing `" << report.earlier_assessment_id << "` (" << report.earlier_date
        << ") with `" << report.later_assessment_id << "` (" << report.later_date << ").\n\n";
    out << "Overall level change: " << (report.overall_delta >= 0 ? "+" : "")
        << report.overall_delta << "\n\n";
    out << "| Requirement | Delta |\n|---|---|\n";
    for (const auto& [id, delta] : report.per_requirement_delta) {
        out << "| " << id << " | " << (delta > 0 ? "+" : "") << delta << " |\n";
    }
    if (!report.regressions.empty()) {
        out << "\n## Regressions\n\n";
        for (const std::string& id : report.regressions) out << "- " << id << "\n";
    }
    if (!report.improvements.empty()) {
        out << "\n## Improvements\n\n";
        for (const std::string& id : report.improvements) out << "- " << id << "\n";
    }
    return out.str();
}

} // namespace cmaf
