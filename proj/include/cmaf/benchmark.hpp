#pragma once

#include "cmaf/scoring.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cmaf {

/// A score card stripped of identifying data. The pseudonym is a salted
/// SHA-256 of the org id; no org id, display name, or evidence survives.
struct AnonymousRecord {
    std::string pseudonym;  // hex
    std::string sector;
    std::string size_class;
    std::string entity_kind;
    std::string date;
    std::string catalog_id;
    std::string catalog_version;
    int overall_level = 0;
    std::vector<std::pair<std::string, int>> per_requirement;  // catalog order
};

enum class GroupBy { sector, size_class, entity_kind, all };

std::string to_string(GroupBy key);
GroupBy group_by_from_string(const std::string& text);

struct RequirementStats {
    int min = 0;
    int max = 0;
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
    double mean = 0.0;
};

struct BenchmarkSummary {
    GroupBy group_by = GroupBy::all;
    std::string group;  // group value, or "all"
    int n = 0;
    bool suppressed = false;  // n < k_min: no per-requirement values emitted
    std::vector<std::pair<std::string, RequirementStats>> requirements;
    std::vector<std::pair<std::string, double>> common_gaps;  // id, share below gap level
};

struct CorrelationMatrix {
    std::vector<std::string> requirement_ids;
    // cells[i][j]: Spearman rho, or nullopt when either vector is constant
    std::vector<std::vector<std::optional<double>>> cells;
    int n = 0;
};

inline constexpr int kDefaultKMin = 3;
inline constexpr int kDefaultGapLevel = 3;  // "common gap" = share below this level

/// Throws Error{usage} on empty salt.
AnonymousRecord anonymize(const ScoreCard& card, std::span<const unsigned char> salt);
AnonymousRecord anonymize(const ScoreCard& card, const std::string& salt);

std::string serialize_record(const AnonymousRecord& record);
AnonymousRecord parse_record(const std::string& text);

/// One summary per group value; groups with n < k_min are suppressed.
/// Throws Error{mismatch} when records span catalog versions.
std::vector<BenchmarkSummary> aggregate(const std::vector<AnonymousRecord>& records,
                                        GroupBy group_by,
                                        int k_min = kDefaultKMin,
                                        int gap_level = kDefaultGapLevel);

/// Spearman rank correlation between every requirement pair.
/// Throws Error{usage} with fewer than 3 records.
CorrelationMatrix correlations(const std::vector<AnonymousRecord>& records);

/// Spearman rank correlation with average ranks for ties; nullopt when either
/// input is constant.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

std::string summaries_to_json_text(const std::vector<BenchmarkSummary>& summaries);
std::string summaries_to_csv(const std::vector<BenchmarkSummary>& summaries);
std::string correlation_matrix_to_csv(const CorrelationMatrix& matrix);
std::string correlation_matrix_to_json_text(const CorrelationMatrix& matrix);

} // namespace cmaf
