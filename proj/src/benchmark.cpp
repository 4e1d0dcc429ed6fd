#include "cmaf/benchmark.hpp"

#include "cmaf/error.hpp"
#include "cmaf/maturity.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace cmaf {

namespace {

using nlohmann::ordered_json;

std::string sha256_hex(std::span<const unsigned char> salt, const std::string& payload) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr ||
        EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, salt.data(), salt.size()) != 1 ||
        EVP_DigestUpdate(ctx, payload.data(), payload.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &digest_len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error(ErrorKind::usage, "SHA-256 digest computation failed");
    }
    EVP_MD_CTX_free(ctx);

    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(digest_len * 2);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0x0f]);
    }
    return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double percentile(const std::vector<int>& sorted, double p) {
    // Linear interpolation between closest ranks.
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

const std::string& group_value(const AnonymousRecord& record, GroupBy key) {
    static const std::string all = "all";
    switch (key) {
        case GroupBy::sector: return record.sector;
        case GroupBy::size_class: return record.size_class;
        case GroupBy::entity_kind: return record.entity_kind;
        case GroupBy::all: return all;
    }
    return all;
}

} // namespace

std::string to_string(GroupBy key) {
    switch (key) {
        case GroupBy::sector: return "sector";
        case GroupBy::size_class: return "size_class";
        case GroupBy::entity_kind: return "entity_kind";
        case GroupBy::all: return "all";
    }
    return "?";
}

GroupBy group_by_from_string(const std::string& text) {
    if (text == "sector") return GroupBy::sector;
    if (text == "size" || text == "size_class") return GroupBy::size_class;
    if (text == "kind" || text == "entity_kind") return GroupBy::entity_kind;
    if (text == "all") return GroupBy::all;
    throw Error(ErrorKind::usage, "unknown group-by key '" + text + "'");
}

AnonymousRecord anonymize(const ScoreCard& card, std::span<const unsigned char> salt) {
    if (salt.empty()) throw Error(ErrorKind::usage, "anonymization salt must be non-empty");

    AnonymousRecord record;
    record.pseudonym = sha256_hex(salt, card.org.org_id);
    record.sector = card.org.sector;
    record.size_class = card.org.size_class;
    record.entity_kind = card.org.entity_kind;
    record.date = card.date;
    record.catalog_id = card.catalog_id;
    record.catalog_version = card.catalog_version;
    record.overall_level = card.overall_level;
    record.per_requirement = card.requirements;
    return record;
}

AnonymousRecord anonymize(const ScoreCard& card, const std::string& salt) {
    return anonymize(card, std::span<const unsigned char>(
                               reinterpret_cast<const unsigned char*>(salt.data()), salt.size()));
}

std::string serialize_record(const AnonymousRecord& record) {
    ordered_json doc;
    doc["pseudonym"] = record.pseudonym;
    doc["sector"] = record.sector;
    doc["size_class"] = record.size_class;
    doc["entity_kind"] = record.entity_kind;
    doc["date"] = record.date;
    doc["catalog_id"] = record.catalog_id;
    doc["catalog_version"] = record.catalog_version;
    doc["overall_level"] = record.overall_level;
    doc["per_requirement"] = ordered_json::object();
    for (const auto& [id, level] : record.per_requirement) doc["per_requirement"][id] = level;
    return doc.dump(2) + "\n";
}

AnonymousRecord parse_record(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::syntax, e.what());
    }
    try {
        AnonymousRecord record;
        record.pseudonym = doc.at("pseudonym").get<std::string>();
        record.sector = doc.at("sector").get<std::string>();
        record.size_class = doc.at("size_class").get<std::string>();
        record.entity_kind = doc.at("entity_kind").get<std::string>();
        record.date = doc.at("date").get<std::string>();
        record.catalog_id = doc.at("catalog_id").get<std::string>();
        record.catalog_version = doc.at("catalog_version").get<std::string>();
        record.overall_level = doc.at("overall_level").get<int>();
        for (const auto& [id, level] : doc.at("per_requirement").items()) {
            record.per_requirement.emplace_back(id, level.get<int>());
        }
        return record;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::schema, std::string("anonymous record: ") + e.what());
    }
}

std::vector<BenchmarkSummary> aggregate(const std::vector<AnonymousRecord>& records,
                                        GroupBy group_by, int k_min, int gap_level) {
    for (const AnonymousRecord& record : records) {
        if (record.catalog_id != records.front().catalog_id ||
            record.catalog_version != records.front().catalog_version) {
            throw Error(ErrorKind::mismatch,
                        "records span multiple catalog versions; aggregate them separately");
        }
    }

    std::map<std::string, std::vector<const AnonymousRecord*>> groups;
    for (const AnonymousRecord& record : records) {
        groups[group_value(record, group_by)].push_back(&record);
    }

    std::vector<BenchmarkSummary> summaries;
    for (const auto& [group, members] : groups) {
        BenchmarkSummary summary;
        summary.group_by = group_by;
        summary.group = group;
        summary.n = static_cast<int>(members.size());
        summary.suppressed = summary.n < k_min;
        if (summary.suppressed) {
            summaries.push_back(std::move(summary));
            continue;
        }

        // Requirement order follows the first member record.
        std::vector<std::pair<std::string, double>> gap_shares;
        for (std::size_t ri = 0; ri < members.front()->per_requirement.size(); ++ri) {
            const std::string& id = members.front()->per_requirement[ri].first;
            std::vector<int> levels;
            int below = 0;
            for (const AnonymousRecord* member : members) {
                for (const auto& [rid, level] : member->per_requirement) {
                    if (rid == id) {
                        levels.push_back(level);
                        if (level < gap_level) ++below;
                        break;
                    }
                }
            }
            std::sort(levels.begin(), levels.end());

            RequirementStats stats;
            stats.min = levels.front();
            stats.max = levels.back();
            stats.p25 = percentile(levels, 0.25);
            stats.median = percentile(levels, 0.50);
            stats.p75 = percentile(levels, 0.75);
            stats.mean = static_cast<double>(std::accumulate(levels.begin(), levels.end(), 0L)) /
                         static_cast<double>(levels.size());
            summary.requirements.emplace_back(id, stats);
            if (below > 0) {
                gap_shares.emplace_back(
                    id, static_cast<double>(below) / static_cast<double>(levels.size()));
            }
        }
        std::stable_sort(gap_shares.begin(), gap_shares.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        summary.common_gaps = std::move(gap_shares);
        summaries.push_back(std::move(summary));
    }
    return summaries;
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) return std::nullopt;
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);

    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;
    double num = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        num += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return std::nullopt;  // constant input
    return num / std::sqrt(var_a * var_b);
}

CorrelationMatrix correlations(const std::vector<AnonymousRecord>& records) {
    if (records.size() < 3) {
        throw Error(ErrorKind::usage, "correlation needs at least 3 records, got " +
                                          std::to_string(records.size()));
    }

    CorrelationMatrix matrix;
    matrix.n = static_cast<int>(records.size());
    for (const auto& [id, level] : records.front().per_requirement) {
        matrix.requirement_ids.push_back(id);
    }

    std::vector<std::vector<double>> columns(matrix.requirement_ids.size());
    for (std::size_t ri = 0; ri < matrix.requirement_ids.size(); ++ri) {
        const std::string& id = matrix.requirement_ids[ri];
        for (const AnonymousRecord& record : records) {
            for (const auto& [rid, level] : record.per_requirement) {
                if (rid == id) {
                    columns[ri].push_back(level);
                    break;
                }
            }
        }
    }

    const std::size_t m = matrix.requirement_ids.size();
    matrix.cells.assign(m, std::vector<std::optional<double>>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const std::optional<double> rho = spearman(columns[i], columns[j]);
            matrix.cells[i][j] = rho;
            matrix.cells[j][i] = rho;
        }
    }
    return matrix;
}

std::string summaries_to_json_text(const std::vector<BenchmarkSummary>& summaries) {
    ordered_json doc = ordered_json::array();
    for (const BenchmarkSummary& summary : summaries) {
        ordered_json s;
        s["group_by"] = to_string(summary.group_by);
        s["group"] = summary.group;
        s["n"] = summary.n;
        s["suppressed"] = summary.suppressed;
        if (!summary.suppressed) {
            s["requirements"] = ordered_json::object();
            for (const auto& [id, stats] : summary.requirements) {
                s["requirements"][id] = {{"min", stats.min},       {"p25", stats.p25},
                                         {"median", stats.median}, {"p75", stats.p75},
                                         {"max", stats.max},       {"mean", stats.mean}};
            }
            s["common_gaps"] = ordered_json::array();
            for (const auto& [id, share] : summary.common_gaps) {
                s["common_gaps"].push_back({{"requirement", id}, {"share_below", share}});
            }
        }
        doc.push_back(std::move(s));
    }
    return doc.dump(2) + "\n";
}

std::string summaries_to_csv(const std::vector<BenchmarkSummary>& summaries) {
    std::ostringstream out;
    out << "group_by,group,n,requirement,min,p25,median,p75,max,mean\n";
    for (const BenchmarkSummary& summary : summaries) {
        if (summary.suppressed) continue;
        for (const auto& [id, stats] : summary.requirements) {
            out << to_string(summary.group_by) << "," << summary.group << "," << summary.n << ","
                << id << "," << stats.min << "," << format_number(stats.p25) << ","
                << format_number(stats.median) << "," << format_number(stats.p75) << ","
                << stats.max << "," << format_number(stats.mean) << "\n";
        }
    }
    return out.str();
}

std::string correlation_matrix_to_csv(const CorrelationMatrix& matrix) {
    std::ostringstream out;
    out << "requirement";
    for (const std::string& id : matrix.requirement_ids) out << "," << id;
    out << "\n";
    for (std::size_t i = 0; i < matrix.requirement_ids.size(); ++i) {
        out << matrix.requirement_ids[i];
        for (std::size_t j = 0; j < matrix.requirement_ids.size(); ++j) {
            out << ",";
            if (matrix.cells[i][j]) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.6f", *matrix.cells[i][j]);
                out << buf;
            } else {
                out << "NA";
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string correlation_matrix_to_json_text(const CorrelationMatrix& matrix) {
    ordered_json doc;
    doc["n"] = matrix.n;
    doc["requirements"] = matrix.requirement_ids;
    doc["cells"] = ordered_json::object();
    for (std::size_t i = 0; i < matrix.requirement_ids.size(); ++i) {
        ordered_json row = ordered_json::object();
        for (std::size_t j = 0; j < matrix.requirement_ids.size(); ++j) {
            if (matrix.cells[i][j]) {
                row[matrix.requirement_ids[j]] = *matrix.cells[i][j];
            } else {
                row[matrix.requirement_ids[j]] = nullptr;
            }
        }
        doc["cells"][matrix.requirement_ids[i]] = std::move(row);
    }
    return doc.dump(2) + "\n";
}

} // namespace cmaf
