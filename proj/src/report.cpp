#include "cmaf/report.hpp"

#include "cmaf/error.hpp"
#include "cmaf/maturity.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cmaf {

namespace {

// pH-style ramp: red channel strictly falls, blue strictly rises with level.
constexpr std::array<const char*, kLevelCount> kSealPalette = {
    "#d3322f", "#b4555a", "#966e82", "#7882aa", "#5a96d2", "#3caaeb",
};

std::string fixed(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

} // namespace

ReportFormat report_format_from_string(const std::string& text) {
    if (text == "md" || text == "markdown") return ReportFormat::markdown;
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    throw Error(ErrorKind::usage, "unknown report format '" + text + "'");
}

std::string render_seal(int level) {
    if (level < kMinLevel || level > kMaxLevel) {
        throw Error(ErrorKind::usage, "seal level out of range: " + std::to_string(level));
    }

    constexpr double size = 240.0;
    constexpr double center = size / 2.0;
    const double ring_step = (size / 2.0 - 10.0) / kLevelCount;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
        << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    // Outermost ring first so inner rings paint on top.
    for (int ring = level; ring >= 0; --ring) {
        const double radius = ring_step * (ring + 1);
        out << "  <circle cx=\"" << fixed(center) << "\" cy=\"" << fixed(center) << "\" r=\""
            << fixed(radius) << "\" fill=\"" << kSealPalette[static_cast<std::size_t>(ring)]
            << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_radar(const ScoreCard& card, bool sub_requirements) {
    std::vector<std::pair<std::string, int>> axes;
    if (sub_requirements) {
        for (const auto& [id, score] : card.units) axes.emplace_back(id, score.attained_level);
    } else {
        axes = card.requirements;
    }
    if (axes.empty()) throw Error(ErrorKind::usage, "score card has no requirement levels to plot");

    constexpr double size = 640.0;
    constexpr double center = size / 2.0;
    constexpr double radius_max = 260.0;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(axes.size());

    auto point = [&](std::size_t axis, double level) {
        const double angle = -std::numbers::pi / 2.0 + step * static_cast<double>(axis);
        const double r = radius_max * level / static_cast<double>(kMaxLevel);
        return std::pair<double, double>{center + r * std::cos(angle),
                                         center + r * std::sin(angle)};
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
        << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";

    for (int ring = 1; ring <= kMaxLevel; ++ring) {
        out << "  <circle class=\"ring\" cx=\"" << fixed(center) << "\" cy=\"" << fixed(center)
            << "\" r=\"" << fixed(radius_max * ring / kMaxLevel)
            << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    }
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const auto [x, y] = point(i, kMaxLevel);
        out << "  <line class=\"axis\" x1=\"" << fixed(center) << "\" y1=\"" << fixed(center)
            << "\" x2=\"" << fixed(x) << "\" y2=\"" << fixed(y) << "\" stroke=\"#999999\"/>\n";
    }
    out << "  <polygon class=\"profile\" fill=\"#5a96d2\" fill-opacity=\"0.45\" "
           "stroke=\"#2d5e94\" points=\"";
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const auto [x, y] = point(i, axes[i].second);
        if (i > 0) out << " ";
        out << fixed(x) << "," << fixed(y);
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const double angle = -std::numbers::pi / 2.0 + step * static_cast<double>(i);
        const double r = radius_max + 24.0;
        const double x = center + r * std::cos(angle);
        const double y = center + r * std::sin(angle);
        out << "  <text class=\"label\" x=\"" << fixed(x) << "\" y=\"" << fixed(y)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << xml_escape(axes[i].first)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_report(const ScoreCard& card, const GapReport& gaps, ReportFormat format,
                          const std::string& lang, const std::optional<std::string>& stamp) {
    (void)lang;  // statements in gaps already carry the default locale text

    switch (format) {
        case ReportFormat::json: {
            nlohmann::ordered_json doc;
            doc["score_card"] = nlohmann::ordered_json::parse(serialize_score_card(card));
            doc["gaps"] = nlohmann::ordered_json::parse(serialize_gap_report(gaps));
            if (stamp) doc["generated"] = *stamp;
            return doc.dump(2) + "\n";
        }
        case ReportFormat::csv: {
            std::ostringstream out;
            out << "unit_id,kind,attained_level,total_controls,responded_controls\n";
            for (const auto& [id, level] : card.requirements) {
                auto leaf = card.units.find(id);
                if (leaf != card.units.end()) {
                    out << id << ",requirement," << level << "," << leaf->second.total_controls
                        << "," << leaf->second.responded_controls << "\n";
                } else {
                    int total = 0, responded = 0;
                    for (const auto& [uid, score] : card.units) {
                        if (uid.rfind(id + ".", 0) == 0) {
                            total += score.total_controls;
                            responded += score.responded_controls;
                        }
                    }
                    out << id << ",requirement," << level << "," << total << "," << responded
                        << "\n";
                    for (const auto& [uid, score] : card.units) {
                        if (uid.rfind(id + ".", 0) == 0) {
                            out << uid << ",sub-requirement," << score.attained_level << ","
                                << score.total_controls << "," << score.responded_controls << "\n";
                        }
                    }
                }
            }
            return out.str();
        }
        case ReportFormat::markdown: break;
    }

    std::ostringstream out;
    out << "# Maturity assessment report\n\n";
    out << "- Assessment: `" << card.assessment_id << "` (" << card.date << ")\n";
    out << "- Organization: " << card.org.display_name << " (" << card.org.sector << ", "
        << card.org.size_class << ", " << card.org.entity_kind << ")\n";
    out << "- Catalog: " << card.catalog_id << " " << card.catalog_version << "\n";
    out << "- Overall level: **" << card.overall_level << " ("
        << level_display_name(card.overall_level) << ")**\n";
    out << "- Mean requirement level: " << fixed(card.mean_requirement_level) << "\n";
    out << "- Response coverage: " << fixed(card.coverage * 100.0) << "%\n";
    if (stamp) out << "- Generated: " << *stamp << "\n";

    for (const auto& [pillar_id, pillar_level] : card.pillars) {
        out << "\n## Pillar " << pillar_id << " — level " << pillar_level << " ("
            << level_display_name(pillar_level) << ")\n\n";
        out << "| Requirement | Level | Name |\n|---|---|---|\n";
        for (const auto& [req_id, req_level] : card.requirements) {
            if (req_id.rfind(pillar_id, 0) != 0) continue;
            out << "| " << req_id << " | " << req_level << " | " << level_display_name(req_level)
                << " |\n";
        }
    }

    out << "\n## Gaps to the next level\n";
    for (const UnitGap& gap : gaps.units) {
        if (gap.satisfied_at_target) continue;
        out << "\n### " << gap.unit_id << ": level " << gap.attained_level << " → target "
            << gap.target_level << "\n\n";
        out << "| Control | Status | Statement |\n|---|---|---|\n";
        for (const BlockingControl& blocking : gap.blocking_controls) {
            out << "| " << blocking.control_id << " | " << to_string(blocking.status) << " | "
                << blocking.statement << " |\n";
        }
    }
    return out.str();
}

std::string blank_assessment_template(const Catalog& catalog) {
    nlohmann::ordered_json doc;
    doc["assessment_id"] = "";
    doc["org"] = {{"org_id", ""}, {"display_name", ""}, {"sector", ""},
                  {"size_class", "small"}, {"entity_kind", "other"}};
    doc["catalog_id"] = catalog.catalog_id;
    doc["catalog_version"] = catalog.version;
    doc["date"] = "1970-01-01";
    doc["methods"] = {"self_assessment"};
    doc["responses"] = nlohmann::ordered_json::array();
    for (const Unit* unit : catalog.leaf_units()) {
        for (const Control& control : unit->controls) {
            doc["responses"].push_back({{"control_id", control.id}, {"status", "not_satisfied"}});
        }
    }
    return doc.dump(2) + "\n";
}

} // namespace cmaf
