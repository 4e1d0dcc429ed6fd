#pragma once

#include "cmaf/validation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmaf {

/// A single verifiable security measure, bound to a maturity level 1..5.
struct Control {
    std::string id;  // "<unit>-L<level>-<seq>", e.g. "B8.2-L3-01"
    int level = 1;
    std::string statement;
    std::optional<std::string> guidance;
    std::map<std::string, std::string> translations;  // locale tag -> statement

    /// Statement in the requested locale, falling back to the default text.
    const std::string& statement_for(const std::string& lang) const;
};

/// A requirement or sub-requirement. Holds controls XOR children.
struct Unit {
    std::string id;     // "A1", "B7", "B7.1"
    std::string title;
    std::vector<Control> controls;
    std::vector<Unit> children;
    std::vector<int> vacuous_levels;  // gates that pass with no controls

    bool is_leaf() const { return children.empty(); }
    bool is_sub_requirement() const { return id.find('.') != std::string::npos; }
    bool level_vacuous(int level) const;
};

struct Pillar {
    std::string id;     // "A", "B", "C"
    std::string title;  // "IDENTIFICATION", "PROTECTION", "DEFENSE"
    std::vector<Unit> requirements;
};

struct Catalog {
    std::string catalog_id;
    std::string version;
    std::vector<Pillar> pillars;

    /// Leaf units (units that carry controls) in catalog order.
    std::vector<const Unit*> leaf_units() const;
    /// Top-level requirements in catalog order.
    std::vector<const Unit*> requirement_units() const;
    const Control* find_control(const std::string& control_id) const;
    std::size_t control_count() const;
};

/// Parses and fully validates a catalog document.
/// Throws Error{syntax} on malformed JSON, Error{schema} on shape problems,
/// Error{invariant} when the parsed catalog has validation errors.
Catalog parse_catalog(const std::string& text);

/// Deterministic canonical serialization; parse_catalog(serialize_catalog(c))
/// is structurally identical to c.
std::string serialize_catalog(const Catalog& catalog);

/// Checks every domain rule. Findings are data; never throws.
ValidationReport validate_catalog(const Catalog& catalog);

/// The embedded canonical catalog. Parsed once, shared, immutable.
const Catalog& builtin_catalog();

} // namespace cmaf
