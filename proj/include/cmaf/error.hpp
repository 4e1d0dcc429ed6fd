#pragma once

#include <stdexcept>
#include <string>

namespace cmaf {

enum class ErrorKind {
    syntax,     // malformed input document
    schema,     // well-formed but wrong shape / missing field
    invariant,  // structurally valid but violates a domain rule
    mismatch,   // incompatible inputs (catalog version, org id, date order)
    usage,      // bad arguments
    io,         // file system failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cmaf
