#pragma once

#include <stdexcept>
#include <string>

namespace acnc {

/// Bad arguments or malformed input (CLI exit code 2).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerically inconsistent data, e.g. an unphysical covariance matrix
/// (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Circuit-file syntax or validation error, tagged with the 1-based line.
struct ParseError : ValidationError {
    int line;
    ParseError(int line_no, const std::string& reason)
        : ValidationError("line " + std::to_string(line_no) + ": " + reason),
          line(line_no) {}
};

}  // namespace acnc
