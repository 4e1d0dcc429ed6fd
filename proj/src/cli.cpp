#include "cmaf/cli.hpp"

#include "cmaf/benchmark.hpp"
#include "cmaf/catalog.hpp"
#include "cmaf/error.hpp"
#include "cmaf/report.hpp"
#include "cmaf/trend.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cmaf::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write '" + out_path + "'");
    out << content;
}

Catalog load_catalog(const std::string& path) {
    if (path.empty()) return builtin_catalog();
    return parse_catalog(read_file(path));
}

BoundAssessment load_bound(const std::string& assessment_path, const std::string& catalog_path) {
    // Keep the parsed catalog alive alongside the binding.
    static thread_local Catalog loaded;
    Assessment assessment = parse_assessment(read_file(assessment_path));
    if (catalog_path.empty()) return bind(assessment, builtin_catalog());
    loaded = parse_catalog(read_file(catalog_path));
    return bind(assessment, loaded);
}

std::vector<unsigned char> decode_hex(const std::string& hex) {
    auto nibble = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw Error(ErrorKind::usage, "salt must be hex-encoded");
    };
    if (hex.empty() || hex.size() % 2 != 0) {
        throw Error(ErrorKind::usage, "salt must be a non-empty even-length hex string");
    }
    std::vector<unsigned char> bytes;
    bytes.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        bytes.push_back(static_cast<unsigned char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    }
    return bytes;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<AnonymousRecord> load_records(const std::vector<std::string>& inputs,
                                          const std::string& salt_hex) {
    std::vector<std::string> files;
    for (const std::string& input : inputs) {
        if (fs::is_directory(input)) {
            for (const fs::directory_entry& entry : fs::directory_iterator(input)) {
                if (entry.path().extension() == ".json") files.push_back(entry.path().string());
            }
        } else {
            files.push_back(input);
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorKind::usage, "no input records found");

    std::vector<AnonymousRecord> records;
    for (const std::string& file : files) {
        const std::string text = read_file(file);
        nlohmann::json probe;
        try {
            probe = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorKind::syntax, file + ": " + e.what());
        }
        if (probe.contains("pseudonym")) {
            records.push_back(parse_record(text));
        } else {
            if (salt_hex.empty()) {
                throw Error(ErrorKind::usage,
                            file + " is a score card; --salt is required to anonymize it");
            }
            const std::vector<unsigned char> salt = decode_hex(salt_hex);
            records.push_back(anonymize(parse_score_card(text), std::span(salt)));
        }
    }
    return records;
}

int exit_code_for(const Error& error) {
    switch (error.kind()) {
        case ErrorKind::usage:
        case ErrorKind::io:
            return kExitUsage;
        default:
            return kExitFindings;
    }
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Cybersecurity maturity assessment toolkit"};
    app.require_subcommand(1);

    std::string catalog_path, assessment_path, out_path, format = "md", lang = "en";
    std::string salt_hex, group_by = "all";
    int k_min = kDefaultKMin;
    int level = 0;
    bool stamp = false, blank = false, sub_requirements = false;
    std::string earlier_path, later_path, card_path;
    std::vector<std::string> inputs;

    auto add_common = [&](CLI::App* cmd, bool with_catalog = true) {
        if (with_catalog) {
            cmd->add_option("--catalog", catalog_path,
                            "Catalog document (defaults to the built-in catalog)");
        }
        cmd->add_option("--out", out_path, "Output path (defaults to stdout)");
    };

    CLI::App* validate = app.add_subcommand("validate", "Validate a catalog or assessment");
    add_common(validate);
    validate->add_option("--assessment", assessment_path, "Assessment document to validate");

    CLI::App* score = app.add_subcommand("score", "Compute a score card");
    add_common(score);
    score->add_option("--assessment", assessment_path, "Assessment document")->required();

    CLI::App* gap = app.add_subcommand("gap", "Gap analysis toward the next level");
    add_common(gap);
    gap->add_option("--assessment", assessment_path, "Assessment document")->required();

    CLI::App* report = app.add_subcommand("report", "Render a full report");
    add_common(report);
    report->add_option("--assessment", assessment_path, "Assessment document");
    report->add_option("--format", format, "md|json|csv");
    report->add_option("--lang", lang, "Locale tag for control statements");
    report->add_flag("--stamp", stamp, "Embed a generation timestamp");
    report->add_flag("--blank", blank, "Emit a blank assessment template for the catalog");

    CLI::App* chart = app.add_subcommand("chart", "Render the radar chart");
    add_common(chart);
    chart->add_option("--assessment", assessment_path, "Assessment document");
    chart->add_option("--card", card_path, "Pre-computed score card document");
    chart->add_flag("--sub-requirements", sub_requirements, "One axis per leaf unit");

    CLI::App* seal = app.add_subcommand("seal", "Render the maturity seal");
    add_common(seal, false);
    seal->add_option("--level", level, "Maturity level 0..5")->required();

    CLI::App* diff_cmd = app.add_subcommand("diff", "Compare two score cards of one organization");
    add_common(diff_cmd, false);
    diff_cmd->add_option("earlier", earlier_path, "Earlier score card")->required();
    diff_cmd->add_option("later", later_path, "Later score card")->required();
    diff_cmd->add_option("--format", format, "md|json");

    CLI::App* anonymize_cmd = app.add_subcommand("anonymize", "Strip a score card to a record");
    add_common(anonymize_cmd, false);
    anonymize_cmd->add_option("card", card_path, "Score card document")->required();
    anonymize_cmd->add_option("--salt", salt_hex, "Pseudonymization salt (hex)")->required();

    CLI::App* aggregate_cmd = app.add_subcommand("aggregate", "Benchmark statistics per group");
    add_common(aggregate_cmd, false);
    aggregate_cmd->add_option("inputs", inputs, "Record/score-card files or directories")
        ->required();
    aggregate_cmd->add_option("--group-by", group_by, "sector|size|kind|all");
    aggregate_cmd->add_option("--k-min", k_min, "Suppress groups smaller than this");
    aggregate_cmd->add_option("--salt", salt_hex, "Salt for anonymizing score-card inputs (hex)");
    aggregate_cmd->add_option("--format", format, "json|csv");

    CLI::App* correlate_cmd = app.add_subcommand("correlate", "Cross-requirement correlations");
    add_common(correlate_cmd, false);
    correlate_cmd->add_option("inputs", inputs, "Record/score-card files or directories")
        ->required();
    correlate_cmd->add_option("--salt", salt_hex, "Salt for anonymizing score-card inputs (hex)");
    correlate_cmd->add_option("--format", format, "csv|json");

    std::vector<const char*> argv;
    argv.push_back("cmaf");
    for (const std::string& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) {
            ValidationReport result;
            if (!catalog_path.empty()) {
                // Bypass parse_catalog's throw-on-error so findings reach the user.
                try {
                    Catalog catalog = parse_catalog(read_file(catalog_path));
                    result = validate_catalog(catalog);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::invariant) throw;
                    result.findings.push_back({Severity::error, "catalog", e.what()});
                }
            }
            if (!assessment_path.empty()) {
                Assessment assessment = parse_assessment(read_file(assessment_path));
                try {
                    bind(assessment, catalog_path.empty() ? builtin_catalog()
                                                          : parse_catalog(read_file(catalog_path)));
                } catch (const Error& e) {
                    result.findings.push_back({Severity::error, "assessment", e.what()});
                }
            }
            if (catalog_path.empty() && assessment_path.empty()) {
                throw Error(ErrorKind::usage, "validate needs --catalog and/or --assessment");
            }
            emit(to_json_text(result), out_path);
            return result.error_count() > 0 ? kExitFindings : kExitOk;
        }

        if (score->parsed()) {
            const BoundAssessment bound = load_bound(assessment_path, catalog_path);
            emit(serialize_score_card(score_card(bound)), out_path);
            return kExitOk;
        }

        if (gap->parsed()) {
            const BoundAssessment bound = load_bound(assessment_path, catalog_path);
            emit(serialize_gap_report(gap_analysis(bound)), out_path);
            return kExitOk;
        }

        if (report->parsed()) {
            if (blank) {
                emit(blank_assessment_template(load_catalog(catalog_path)), out_path);
                return kExitOk;
            }
            if (assessment_path.empty()) {
                throw Error(ErrorKind::usage, "report needs --assessment (or --blank)");
            }
            const BoundAssessment bound = load_bound(assessment_path, catalog_path);
            const ScoreCard card = score_card(bound);
            const GapReport gaps = gap_analysis(bound);
            const std::optional<std::string> stamp_text =
                stamp ? std::optional<std::string>(utc_timestamp()) : std::nullopt;
            emit(render_report(card, gaps, report_format_from_string(format), lang, stamp_text),
                 out_path);
            return kExitOk;
        }

        if (chart->parsed()) {
            ScoreCard card;
            if (!card_path.empty()) {
                card = parse_score_card(read_file(card_path));
            } else if (!assessment_path.empty()) {
                card = score_card(load_bound(assessment_path, catalog_path));
            } else {
                throw Error(ErrorKind::usage, "chart needs --assessment or --card");
            }
            emit(render_radar(card, sub_requirements), out_path);
            return kExitOk;
        }

        if (seal->parsed()) {
            emit(render_seal(level), out_path);
            return kExitOk;
        }

        if (diff_cmd->parsed()) {
            const TrendReport trend = diff(parse_score_card(read_file(earlier_path)),
                                           parse_score_card(read_file(later_path)));
            if (format == "json") {
                emit(serialize_trend_report(trend), out_path);
            } else {
                emit(render_trend_markdown(trend), out_path);
            }
            return kExitOk;
        }

        if (anonymize_cmd->parsed()) {
            const std::vector<unsigned char> salt = decode_hex(salt_hex);
            const AnonymousRecord record =
                anonymize(parse_score_card(read_file(card_path)), std::span(salt));
            emit(serialize_record(record), out_path);
            return kExitOk;
        }

        if (aggregate_cmd->parsed()) {
            const std::vector<AnonymousRecord> records = load_records(inputs, salt_hex);
            const std::vector<BenchmarkSummary> summaries =
                aggregate(records, group_by_from_string(group_by), k_min);
            emit(format == "csv" ? summaries_to_csv(summaries)
                                 : summaries_to_json_text(summaries),
                 out_path);
            return kExitOk;
        }

        if (correlate_cmd->parsed()) {
            const std::vector<AnonymousRecord> records = load_records(inputs, salt_hex);
            const CorrelationMatrix matrix = correlations(records);
            emit(format == "json" ? correlation_matrix_to_json_text(matrix)
                                  : correlation_matrix_to_csv(matrix),
                 out_path);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace cmaf::cli
