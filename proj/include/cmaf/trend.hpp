#pragma once

#include "cmaf/scoring.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cmaf {

/// Level movement between two assessments of the same organization.
struct TrendReport {
    std::string org_id;
    std::string earlier_assessment_id;
    std::string earlier_date;
    std::string later_assessment_id;
    std::string later_date;
    int overall_delta = 0;
    std::vector<std::pair<std::string, int>> per_requirement_delta;  // catalog order
    std::vector<std::string> regressions;   // requirement ids, delta < 0
    std::vector<std::string> improvements;  // requirement ids, delta > 0
    std::vector<std::string> only_in_earlier;  // structural changes
    std::vector<std::string> only_in_later;
};

/// Throws Error{mismatch} on differing org, catalog id/version, or when
/// earlier.date > later.date.
TrendReport diff(const ScoreCard& earlier, const ScoreCard& later);

std::string serialize_trend_report(const TrendReport& report);
std::string render_trend_markdown(const TrendReport& report);

} // namespace cmaf
