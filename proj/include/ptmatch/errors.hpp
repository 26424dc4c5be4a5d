#pragma once

#include <stdexcept>
#include <string>

namespace ptmatch {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input to a domain operation (bad shift, partial valuation, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Malformed textual/JSON input. Carries a 1-based line number when known.
struct ParseError : Error {
    int line;
    explicit ParseError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

/// Pattern rejected by normalization (violates the single-final / $-edge rules).
struct PatternError : Error {
    using Error::Error;
};

/// Exploration exceeded its configured state ceiling.
struct ResourceError : Error {
    using Error::Error;
};

/// Asked for the bounds of a variable over an empty polyhedron.
struct EmptyPolyError : Error {
    using Error::Error;
};

} // namespace ptmatch
