#pragma once

#include <stdexcept>
#include <string>

namespace orthoinv {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: unparseable files, degree mismatches, bad tokens.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// A size or domain guard was violated (n < 3, odd degree, group too large, ...).
struct GuardError : Error {
    explicit GuardError(const std::string& what) : Error(what) {}
};

/// Semantically invalid value for an operation (non-orthogonal matrix,
/// form not in the slice, arity mismatch, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// A Vandermonde block cannot be inverted: colliding nodes or a zero
/// diagonal factor. Carries the offending block for reporting.
struct SingularBlockError : DomainError {
    SingularBlockError(const std::string& block, const std::string& detail)
        : DomainError("singular block " + block + ": " + detail), block(block), detail(detail) {}
    std::string block;
    std::string detail;
};

} // namespace orthoinv
