#include "doctest.h"

#include "cmaf/error.hpp"
#include "cmaf/trend.hpp"

#include <map>
#include <random>

using namespace cmaf;

namespace {

ScoreCard card_with_levels(const std::map<std::string, int>& caps, const std::string& date,
                           const std::string& assessment_id) {
    Assessment assessment;
    assessment.assessment_id = assessment_id;
    assessment.org = {"org-t", "Trend Org", "healthcare", "mid", "OES"};
    assessment.catalog_id = builtin_catalog().catalog_id;
    assessment.catalog_version = builtin_catalog().version;
    assessment.date = date;
    assessment.methods = {AssessmentMethod::self_assessment};
    for (const Unit* unit : builtin_catalog().leaf_units()) {
        // The cap of a sub-requirement follows its parent requirement id.
        std::string requirement_id = unit->id.substr(0, unit->id.find('.'));
        const auto it = caps.find(requirement_id);
        const int cap = it == caps.end() ? 5 : it->second;
        for (const Control& control : unit->controls) {
            assessment.responses.push_back({control.id,
                                            control.level <= cap
                                                ? ResponseStatus::satisfied
                                                : ResponseStatus::not_satisfied,
                                            {},
                                            {}});
        }
    }
    return score_card(bind(assessment, builtin_catalog()));
}

ScoreCard random_card(std::mt19937& rng, const std::string& date, const std::string& id) {
    std::map<std::string, int> caps;
    std::uniform_int_distribution<int> level_dist(0, 5);
    for (const Unit* requirement : builtin_catalog().requirement_units()) {
        caps[requirement->id] = level_dist(rng);
    }
    return card_with_levels(caps, date, id);
}

} // namespace

TEST_CASE("diff of a card with itself is all zero") {
    const ScoreCard card = card_with_levels({{"A1", 3}}, "2026-01-01", "asm-a");
    const TrendReport report = diff(card, card);
    CHECK(report.overall_delta == 0);
    CHECK(report.regressions.empty());
    CHECK(report.improvements.empty());
    for (const auto& [id, delta] : report.per_requirement_delta) CHECK(delta == 0);
    CHECK(report.per_requirement_delta.size() == 20);
}

TEST_CASE("improvement from 2 to 4 shows +2 and lands in improvements") {
    const ScoreCard earlier = card_with_levels({{"B9", 2}}, "2025-06-01", "asm-1");
    const ScoreCard later = card_with_levels({{"B9", 4}}, "2026-06-01", "asm-2");
    const TrendReport report = diff(earlier, later);
    for (const auto& [id, delta] : report.per_requirement_delta) {
        CHECK(delta == (id == "B9" ? 2 : 0));
    }
    REQUIRE(report.improvements.size() == 1);
    CHECK(report.improvements[0] == "B9");
    CHECK(report.regressions.empty());
}

TEST_CASE("regressions and improvements never overlap") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const ScoreCard a = random_card(rng, "2025-01-01", "asm-a");
        const ScoreCard b = random_card(rng, "2026-01-01", "asm-b");
        const TrendReport report = diff(a, b);
        for (const std::string& id : report.regressions) {
            for (const std::string& other : report.improvements) CHECK(id != other);
        }
    }
}

TEST_CASE("diff is antisymmetric over random card pairs") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 120; ++trial) {
        ScoreCard a = random_card(rng, "2025-03-03", "asm-a");
        ScoreCard b = random_card(rng, "2025-03-03", "asm-b");
        const TrendReport forward = diff(a, b);
        const TrendReport backward = diff(b, a);
        REQUIRE(forward.per_requirement_delta.size() == backward.per_requirement_delta.size());
        for (std::size_t i = 0; i < forward.per_requirement_delta.size(); ++i) {
            CHECK(forward.per_requirement_delta[i].first ==
                  backward.per_requirement_delta[i].first);
            CHECK(forward.per_requirement_delta[i].second ==
                  -backward.per_requirement_delta[i].second);
        }
        CHECK(forward.overall_delta == -backward.overall_delta);
    }
}

TEST_CASE("overall delta equals the difference in overall levels") {
    const ScoreCard earlier = card_with_levels({{"C17", 1}}, "2025-01-01", "asm-1");
    const ScoreCard later = card_with_levels({{"C17", 4}}, "2026-01-01", "asm-2");
    const TrendReport report = diff(earlier, later);
    CHECK(report.overall_delta == later.overall_level - earlier.overall_level);
}

TEST_CASE("org mismatch is refused") {
    ScoreCard a = card_with_levels({}, "2025-01-01", "asm-1");
    ScoreCard b = a;
    b.org.org_id = "someone-else";
    CHECK_THROWS_AS(diff(a, b), Error);
}

TEST_CASE("catalog version mismatch is refused") {
    ScoreCard a = card_with_levels({}, "2025-01-01", "asm-1");
    ScoreCard b = a;
    b.catalog_version = "2.0.0";
    CHECK_THROWS_AS(diff(a, b), Error);
}

TEST_CASE("date order violation is refused") {
    ScoreCard a = card_with_levels({}, "2026-01-01", "asm-1");
    ScoreCard b = card_with_levels({}, "2025-01-01", "asm-2");
    CHECK_THROWS_AS(diff(a, b), Error);
}

TEST_CASE("structural changes are listed separately") {
    ScoreCard a = card_with_levels({}, "2025-01-01", "asm-1");
    ScoreCard b = a;
    b.requirements.erase(b.requirements.begin());  // drop A1 from the later card
    b.requirements.emplace_back("C21", 3);
    const TrendReport report = diff(a, b);
    REQUIRE(report.only_in_earlier.size() == 1);
    CHECK(report.only_in_earlier[0] == "A1");
    REQUIRE(report.only_in_later.size() == 1);
    CHECK(report.only_in_later[0] == "C21");
    CHECK(report.per_requirement_delta.size() == 19);
}

TEST_CASE("trend report serializes deterministically") {
    const ScoreCard a = card_with_levels({{"B12", 2}}, "2025-01-01", "asm-1");
    const ScoreCard b = card_with_levels({{"B12", 3}}, "2026-01-01", "asm-2");
    CHECK(serialize_trend_report(diff(a, b)) == serialize_trend_report(diff(a, b)));
    const std::string markdown = render_trend_markdown(diff(a, b));
    CHECK(markdown.find("| B12 | +1 |") != std::string::npos);
}
