#pragma once

#include "cmaf/assessment.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cmaf {

enum class GateResult { passed, failed, vacuous };

std::string to_string(GateResult gate);
GateResult gate_from_string(const std::string& text);

/// Result of cumulative gating for one leaf unit.
/// attained_level is the largest L such that gates 1..L all passed or were
/// vacuous; gates index 0 corresponds to level 1.
struct UnitScore {
    std::string unit_id;
    int attained_level = 0;
    std::array<GateResult, 5> gates{};
    std::array<std::vector<std::string>, 5> failing_controls{};
    int total_controls = 0;
    int responded_controls = 0;
};

struct ScoreCard {
    std::string assessment_id;
    OrgProfile org;
    std::string catalog_id;
    std::string catalog_version;
    std::string date;
    int overall_level = 0;
    double mean_requirement_level = 0.0;
    double coverage = 0.0;
    std::vector<std::pair<std::string, int>> pillars;       // catalog order
    std::vector<std::pair<std::string, int>> requirements;  // catalog order
    std::map<std::string, UnitScore> units;                 // leaf units

    int requirement_level(const std::string& id) const;
};

struct BlockingControl {
    std::string control_id;
    std::string statement;
    ResponseStatus status = ResponseStatus::not_satisfied;
};

struct UnitGap {
    std::string unit_id;
    int attained_level = 0;
    int target_level = 0;  // min(attained + 1, 5)
    bool satisfied_at_target = false;
    std::vector<BlockingControl> blocking_controls;
};

struct GapReport {
    std::string assessment_id;
    std::vector<UnitGap> units;  // leaf units, catalog order
};

/// Scores one leaf unit against the bound statuses. Controls without an entry
/// in statuses count as not_satisfied. Gate rule: not_applicable always
/// passes; level 1 also admits partially_satisfied; levels 2..5 require
/// satisfied. Levels with no controls, or marked vacuous, pass as vacuous.
/// Throws Error{usage} for a non-leaf unit.
UnitScore score_unit(const Unit& unit, const std::map<std::string, ResponseStatus>& statuses);

/// Full rollup: leaf scores, then min over children / requirements / pillars.
ScoreCard score_card(const BoundAssessment& bound);

/// Controls blocking each leaf unit from its next level.
GapReport gap_analysis(const BoundAssessment& bound);

std::string serialize_score_card(const ScoreCard& card);
ScoreCard parse_score_card(const std::string& text);

std::string serialize_gap_report(const GapReport& report);

} // namespace cmaf
