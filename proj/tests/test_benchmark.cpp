#include "doctest.h"

#include "cmaf/benchmark.hpp"
#include "cmaf/error.hpp"

#include <algorithm>
#include <map>
#include <random>

using namespace cmaf;

namespace {

ScoreCard simple_card(const std::string& org_id, const std::string& sector) {
    Assessment assessment;
    assessment.assessment_id = "asm-" + org_id;
    assessment.org = {org_id, "Org " + org_id, sector, "mid", "OES"};
    assessment.catalog_id = builtin_catalog().catalog_id;
    assessment.catalog_version = builtin_catalog().version;
    assessment.date = "2026-04-01";
    assessment.methods = {AssessmentMethod::self_assessment};
    for (const Unit* unit : builtin_catalog().leaf_units()) {
        for (const Control& control : unit->controls) {
            assessment.responses.push_back({control.id, ResponseStatus::satisfied, {}, {}});
        }
    }
    return score_card(bind(assessment, builtin_catalog()));
}

AnonymousRecord record_with_levels(const std::string& pseudonym, const std::string& sector,
                                   const std::map<std::string, int>& levels) {
    AnonymousRecord record;
    record.pseudonym = pseudonym;
    record.sector = sector;
    record.size_class = "mid";
    record.entity_kind = "OES";
    record.date = "2026-04-01";
    record.catalog_id = "cmaf-core";
    record.catalog_version = "1.0.0";
    record.overall_level = 0;
    for (const Unit* requirement : builtin_catalog().requirement_units()) {
        const auto it = levels.find(requirement->id);
        record.per_requirement.emplace_back(requirement->id,
                                            it == levels.end() ? 3 : it->second);
    }
    return record;
}

} // namespace

TEST_CASE("same org and salt give identical pseudonyms; different salt differs") {
    const ScoreCard card = simple_card("org-77", "healthcare");
    const AnonymousRecord a = anonymize(card, std::string("salt-1"));
    const AnonymousRecord b = anonymize(card, std::string("salt-1"));
    const AnonymousRecord c = anonymize(card, std::string("salt-2"));
    CHECK(a.pseudonym == b.pseudonym);
    CHECK(a.pseudonym != c.pseudonym);
    CHECK(a.pseudonym.size() == 64);  // SHA-256 hex
}

TEST_CASE("empty salt is refused") {
    const ScoreCard card = simple_card("org-77", "healthcare");
    CHECK_THROWS_AS(anonymize(card, std::string("")), Error);
}

TEST_CASE("serialized record carries no identifying data") {
    const ScoreCard card = simple_card("org-secret-42", "healthcare");
    const std::string text = serialize_record(anonymize(card, std::string("pepper")));
    CHECK(text.find("org-secret-42") == std::string::npos);
    CHECK(text.find("Org org-secret-42") == std::string::npos);
    CHECK(text.find("display_name") == std::string::npos);
    CHECK(text.find("org_id") == std::string::npos);
}

TEST_CASE("record round-trips through serialization") {
    const AnonymousRecord record = record_with_levels("abc123", "energy", {{"A1", 4}});
    const std::string once = serialize_record(record);
    const std::string twice = serialize_record(parse_record(once));
    CHECK(once == twice);
}

TEST_CASE("levels 1,3,5 give median 3, mean 3.00, min 1, max 5") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "health", {{"A1", 1}}),
        record_with_levels("p2", "health", {{"A1", 3}}),
        record_with_levels("p3", "health", {{"A1", 5}}),
    };
    const auto summaries = aggregate(records, GroupBy::all, 3);
    REQUIRE(summaries.size() == 1);
    REQUIRE(!summaries[0].suppressed);
    const auto& [id, stats] = summaries[0].requirements.front();
    CHECK(id == "A1");
    CHECK(stats.min == 1);
    CHECK(stats.max == 5);
    CHECK(stats.median == doctest::Approx(3.0));
    CHECK(stats.mean == doctest::Approx(3.0));
    CHECK(stats.p25 <= stats.median);
    CHECK(stats.median <= stats.p75);
}

TEST_CASE("singleton group with k_min 1 collapses all statistics to the record") {
    std::vector<AnonymousRecord> records = {record_with_levels("p1", "health", {{"A1", 2}})};
    const auto summaries = aggregate(records, GroupBy::all, 1);
    REQUIRE(summaries.size() == 1);
    const auto& [id, stats] = summaries[0].requirements.front();
    CHECK(stats.min == 2);
    CHECK(stats.max == 2);
    CHECK(stats.median == doctest::Approx(2.0));
    CHECK(stats.mean == doctest::Approx(2.0));
}

TEST_CASE("groups below k_min are suppressed with no per-requirement values") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "transport", {}),
        record_with_levels("p2", "transport", {}),
    };
    const auto summaries = aggregate(records, GroupBy::sector, 3);
    REQUIRE(summaries.size() == 1);
    CHECK(summaries[0].suppressed);
    CHECK(summaries[0].requirements.empty());
    const std::string json_text = summaries_to_json_text(summaries);
    CHECK(json_text.find("requirements") == std::string::npos);
    CHECK(json_text.find("A1") == std::string::npos);
    const std::string csv_text = summaries_to_csv(summaries);
    CHECK(csv_text.find("A1") == std::string::npos);
}

TEST_CASE("common gaps rank by share below level 3, ties by requirement order") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "h", {{"A2", 0}, {"B9", 2}, {"C17", 1}}),
        record_with_levels("p2", "h", {{"A2", 1}, {"B9", 4}, {"C17", 2}}),
        record_with_levels("p3", "h", {{"A2", 2}, {"B9", 5}, {"C17", 5}}),
    };
    const auto summaries = aggregate(records, GroupBy::all, 3);
    REQUIRE(summaries.size() == 1);
    const auto& gaps = summaries[0].common_gaps;
    REQUIRE(gaps.size() == 3);
    CHECK(gaps[0].first == "A2");  // share 1.0
    CHECK(gaps[0].second == doctest::Approx(1.0));
    CHECK(gaps[1].first == "C17");  // 2/3, ahead of B9's 1/3
    CHECK(gaps[2].first == "B9");
}

TEST_CASE("aggregation is permutation-invariant") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "h", {{"A1", 1}}),
        record_with_levels("p2", "h", {{"A1", 4}}),
        record_with_levels("p3", "h", {{"A1", 2}}),
        record_with_levels("p4", "x", {{"A1", 5}}),
        record_with_levels("p5", "x", {{"A1", 0}}),
        record_with_levels("p6", "x", {{"A1", 3}}),
    };
    const std::string before = summaries_to_json_text(aggregate(records, GroupBy::sector, 3));
    std::reverse(records.begin(), records.end());
    const std::string after = summaries_to_json_text(aggregate(records, GroupBy::sector, 3));
    CHECK(before == after);
}

TEST_CASE("mixed catalog versions are refused") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "h", {}),
        record_with_levels("p2", "h", {}),
    };
    records[1].catalog_version = "0.9.0";
    CHECK_THROWS_AS(aggregate(records, GroupBy::all, 1), Error);
}

TEST_CASE("spearman matches the hand-derived 0.5 case") {
    const std::vector<double> a = {1, 2, 3};
    const std::vector<double> b = {2, 1, 3};
    const auto rho = spearman(a, b);
    REQUIRE(rho.has_value());
    CHECK(*rho == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spearman is exactly +1 on identical and -1 on reversed rankings") {
    const std::vector<double> a = {0, 2, 3, 5, 4};
    const std::vector<double> reversed = {5, 3, 2, 0, 1};
    CHECK(*spearman(a, a) == 1.0);
    CHECK(*spearman(a, reversed) == -1.0);
}

TEST_CASE("spearman handles ties with average ranks") {
    // a = (1,2,2,3) -> ranks (1, 2.5, 2.5, 4); b strictly increasing.
    const std::vector<double> a = {1, 2, 2, 3};
    const std::vector<double> b = {10, 20, 30, 40};
    const auto rho = spearman(a, b);
    REQUIRE(rho.has_value());
    CHECK(*rho == doctest::Approx(0.9486832980505138).epsilon(1e-9));
}

TEST_CASE("spearman on a constant vector is undefined") {
    const std::vector<double> constant = {2, 2, 2};
    const std::vector<double> varying = {1, 2, 3};
    CHECK(!spearman(constant, varying).has_value());
}

TEST_CASE("correlation matrix is symmetric with unit diagonal") {
    std::mt19937 rng(5);
    std::vector<AnonymousRecord> records;
    std::uniform_int_distribution<int> level_dist(0, 5);
    for (int i = 0; i < 8; ++i) {
        std::map<std::string, int> levels;
        for (const Unit* requirement : builtin_catalog().requirement_units()) {
            levels[requirement->id] = level_dist(rng);
        }
        records.push_back(record_with_levels("p" + std::to_string(i), "h", levels));
    }
    const CorrelationMatrix matrix = correlations(records);
    CHECK(matrix.n == 8);
    for (std::size_t i = 0; i < matrix.requirement_ids.size(); ++i) {
        for (std::size_t j = 0; j < matrix.requirement_ids.size(); ++j) {
            REQUIRE(matrix.cells[i][j].has_value() == matrix.cells[j][i].has_value());
            if (matrix.cells[i][j]) {
                CHECK(std::abs(*matrix.cells[i][j] - *matrix.cells[j][i]) <= 1e-12);
                CHECK(*matrix.cells[i][j] >= -1.0);
                CHECK(*matrix.cells[i][j] <= 1.0);
            }
        }
        if (matrix.cells[i][i]) CHECK(*matrix.cells[i][i] == doctest::Approx(1.0));
    }
}

TEST_CASE("identical and reversed requirement columns give +1 and -1") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "h", {{"A1", 1}, {"C17", 1}, {"B9", 5}}),
        record_with_levels("p2", "h", {{"A1", 2}, {"C17", 2}, {"B9", 4}}),
        record_with_levels("p3", "h", {{"A1", 4}, {"C17", 4}, {"B9", 0}}),
    };
    const CorrelationMatrix matrix = correlations(records);
    const auto index = [&](const std::string& id) {
        return static_cast<std::size_t>(
            std::find(matrix.requirement_ids.begin(), matrix.requirement_ids.end(), id) -
            matrix.requirement_ids.begin());
    };
    CHECK(*matrix.cells[index("A1")][index("C17")] == 1.0);
    CHECK(*matrix.cells[index("A1")][index("B9")] == -1.0);
    // A2 is constant 3 across records: undefined, also on the diagonal.
    CHECK(!matrix.cells[index("A2")][index("A1")].has_value());
    CHECK(!matrix.cells[index("A2")][index("A2")].has_value());
}

TEST_CASE("fewer than three records are refused") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "h", {}),
        record_with_levels("p2", "h", {}),
    };
    CHECK_THROWS_AS(correlations(records), Error);
}

TEST_CASE("correlation CSV marks undefined cells NA") {
    std::vector<AnonymousRecord> records = {
        record_with_levels("p1", "h", {{"A1", 1}}),
        record_with_levels("p2", "h", {{"A1", 2}}),
        record_with_levels("p3", "h", {{"A1", 3}}),
    };
    const std::string csv = correlation_matrix_to_csv(correlations(records));
    CHECK(csv.find("NA") != std::string::npos);
    CHECK(csv.rfind("requirement,A1,", 0) == 0);
}
