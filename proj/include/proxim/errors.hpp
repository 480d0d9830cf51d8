#pragma once

#include <stdexcept>
#include <string>

namespace proxim {

/// Mismatched dimensions or ambient norms between operands.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A point lies outside the domain an operation requires.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A map image escaped the opposite set of a cyclic pair.
struct CyclicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inconsistent or incomplete configuration (e.g. a psi-class check without a gauge).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Lookup of a named resource (gallery instance) failed.
struct NotFoundError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Instance or report document failed schema validation.
struct SchemaError : std::runtime_error {
    SchemaError(const std::string& msg, int line = -1, int column = -1)
        : std::runtime_error(format(msg, line, column)), line(line), column(column) {}

    int line;    // 1-based, -1 if unknown
    int column;  // 1-based, -1 if unknown

private:
    static std::string format(const std::string& msg, int line, int column) {
        if (line < 0) return msg;
        return msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
    }
};

}  // namespace proxim
