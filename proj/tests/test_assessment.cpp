#include "doctest.h"

#include "cmaf/assessment.hpp"
#include "cmaf/error.hpp"

#include <fstream>
#include <sstream>

using namespace cmaf;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Assessment base_assessment() {
    Assessment assessment;
    assessment.assessment_id = "asm-1";
    assessment.org = {"org-1", "Test Org", "healthcare", "mid", "OES"};
    assessment.catalog_id = builtin_catalog().catalog_id;
    assessment.catalog_version = builtin_catalog().version;
    assessment.date = "2026-01-15";
    assessment.methods = {AssessmentMethod::self_assessment};
    return assessment;
}

std::string with_responses(const std::string& responses) {
    return R"({
  "assessment_id": "asm-1",
  "org": { "org_id": "o", "display_name": "O", "sector": "healthcare",
           "size_class": "mid", "entity_kind": "OES" },
  "catalog_id": "cmaf-core",
  "catalog_version": "1.0.0",
  "date": "2026-01-15",
  "methods": ["interview"],
  "responses": )" + responses + "\n}";
}

} // namespace

TEST_CASE("valid document parses with responses in order") {
    const Assessment assessment = parse_assessment(with_responses(R"([
      { "control_id": "A1-L1-01", "status": "satisfied" },
      { "control_id": "A1-L1-02", "status": "partially_satisfied", "evidence": "notes" },
      { "control_id": "A1-L2-01", "status": "not_satisfied" }
    ])"));
    REQUIRE(assessment.responses.size() == 3);
    CHECK(assessment.responses[0].control_id == "A1-L1-01");
    CHECK(assessment.responses[1].evidence == "notes");
    CHECK(assessment.responses[2].status == ResponseStatus::not_satisfied);
}

TEST_CASE("duplicate responses for one control are rejected") {
    CHECK_THROWS_WITH_AS(parse_assessment(with_responses(R"([
      { "control_id": "A1-L1-01", "status": "satisfied" },
      { "control_id": "A1-L1-01", "status": "not_satisfied" }
    ])")),
                         doctest::Contains("duplicate response"), Error);
}

TEST_CASE("not_applicable without justification is rejected") {
    CHECK_THROWS_WITH_AS(parse_assessment(with_responses(R"([
      { "control_id": "A1-L1-01", "status": "not_applicable" }
    ])")),
                         doctest::Contains("justification required"), Error);
}

TEST_CASE("empty methods list is rejected") {
    std::string doc = with_responses("[]");
    doc.replace(doc.find("[\"interview\"]"), 13, "[]");
    CHECK_THROWS_WITH_AS(parse_assessment(doc),
                         doctest::Contains("at least one assessment method"), Error);
}

TEST_CASE("bad size_class and entity_kind are rejected") {
    std::string doc = with_responses("[]");
    std::string bad = doc;
    bad.replace(bad.find("\"mid\""), 5, "\"huge\"");
    CHECK_THROWS_AS(parse_assessment(bad), Error);
    bad = doc;
    bad.replace(bad.find("\"OES\""), 5, "\"NCA\"");
    CHECK_THROWS_AS(parse_assessment(bad), Error);
}

TEST_CASE("full coverage binds to 1.0, empty to 0.0") {
    const Catalog& catalog = builtin_catalog();
    Assessment assessment = base_assessment();
    for (const Unit* unit : catalog.leaf_units()) {
        for (const Control& control : unit->controls) {
            assessment.responses.push_back({control.id, ResponseStatus::satisfied, {}, {}});
        }
    }
    CHECK(bind(assessment, catalog).coverage == doctest::Approx(1.0));

    Assessment empty = base_assessment();
    const BoundAssessment bound = bind(empty, catalog);
    CHECK(bound.coverage == doctest::Approx(0.0));
    CHECK(bound.unanswered.size() == catalog.control_count());
}

TEST_CASE("unknown control id fails binding and is named") {
    Assessment assessment = base_assessment();
    assessment.responses.push_back({"Z9-L1-01", ResponseStatus::satisfied, {}, {}});
    CHECK_THROWS_WITH_AS(bind(assessment, builtin_catalog()), doctest::Contains("Z9-L1-01"),
                         Error);
}

TEST_CASE("catalog id or version mismatch fails binding") {
    Assessment assessment = base_assessment();
    assessment.catalog_version = "9.9.9";
    CHECK_THROWS_AS(bind(assessment, builtin_catalog()), Error);
}

TEST_CASE("coverage never decreases when adding a response") {
    Assessment assessment = base_assessment();
    double previous = bind(assessment, builtin_catalog()).coverage;
    for (const Unit* unit : builtin_catalog().leaf_units()) {
        assessment.responses.push_back(
            {unit->controls.front().id, ResponseStatus::not_satisfied, {}, {}});
        const double coverage = bind(assessment, builtin_catalog()).coverage;
        CHECK(coverage >= previous);
        previous = coverage;
    }
}

TEST_CASE("assessment round-trips through serialization") {
    const std::string path = std::string(CMAF_DATA_DIR) + "/examples/sample_assessment.json";
    const std::string once = serialize_assessment(parse_assessment(read_file(path)));
    const std::string twice = serialize_assessment(parse_assessment(once));
    CHECK(once == twice);
}

TEST_CASE("bind is deterministic") {
    const std::string path = std::string(CMAF_DATA_DIR) + "/examples/sample_assessment.json";
    const Assessment assessment = parse_assessment(read_file(path));
    const BoundAssessment a = bind(assessment, builtin_catalog());
    const BoundAssessment b = bind(assessment, builtin_catalog());
    CHECK(a.coverage == b.coverage);
    CHECK(a.status_by_control == b.status_by_control);
    CHECK(a.unanswered == b.unanswered);
}
