#include "cmaf/validation.hpp"

#include <json.hpp>

#include <algorithm>

namespace cmaf {

int ValidationReport::error_count() const {
    return static_cast<int>(std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
        return f.severity == Severity::error;
    }));
}

int ValidationReport::warning_count() const {
    return static_cast<int>(findings.size()) - error_count();
}

std::string to_json_text(const ValidationReport& report) {
    nlohmann::ordered_json doc;
    doc["errors"] = report.error_count();
    doc["warnings"] = report.warning_count();
    doc["findings"] = nlohmann::ordered_json::array();
    for (const Finding& f : report.findings) {
        doc["findings"].push_back({
            {"severity", f.severity == Severity::error ? "error" : "warning"},
            {"path", f.path},
            {"message", f.message},
        });
    }
    return doc.dump(2) + "\n";
}

} // namespace cmaf
