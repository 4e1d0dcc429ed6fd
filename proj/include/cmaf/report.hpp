#pragma once

#include "cmaf/scoring.hpp"

#include <optional>
#include <string>

namespace cmaf {

enum class ReportFormat { markdown, json, csv };

ReportFormat report_format_from_string(const std::string& text);

/// Standalone SVG seal: level + 1 concentric circles, red (innermost) through
/// blue. Deterministic byte output. Throws Error{usage} out of range.
std::string render_seal(int level);

/// Standalone SVG radar chart: one labeled axis per requirement (or per leaf
/// unit when sub_requirements is set), grid rings at levels 1..5, one polygon
/// vertex per axis at radius level/5. Deterministic.
std::string render_radar(const ScoreCard& card, bool sub_requirements = false);

/// Human-readable report. markdown: per-pillar sections, level long names,
/// gap tables. csv: one row per unit. json: score card serialization plus
/// gaps. stamp, when present, is embedded verbatim as a generation note.
std::string render_report(const ScoreCard& card, const GapReport& gaps, ReportFormat format,
                          const std::string& lang = "en",
                          const std::optional<std::string>& stamp = std::nullopt);

/// Blank assessment document covering every control of the catalog.
std::string blank_assessment_template(const Catalog& catalog);

} // namespace cmaf
