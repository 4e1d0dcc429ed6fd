#pragma once

#include <string>
#include <vector>

namespace cmaf {

enum class Severity { error, warning };

struct Finding {
    Severity severity;
    std::string path;     // unit / control path, e.g. "B7.1" or "B7.1/B7.1-L2-01"
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    int error_count() const;
    int warning_count() const;
    bool ok() const { return findings.empty(); }
};

std::string to_json_text(const ValidationReport& report);

} // namespace cmaf
