#pragma once

#include <stdexcept>
#include <string>

namespace sturmperm {

// Base class for all toolkit errors. Subclasses mirror the failure modes of
// the public operations so callers can dispatch on type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exact
struct MixedRadicandError : Error { using Error::Error; };
struct DivisionByZeroError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// words
struct BoundaryHitError : Error { using Error::Error; };

// perms
struct DegenerateParametersError : Error { using Error::Error; };
struct InvalidGapsError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct WindowTooWideError : Error { using Error::Error; };
struct InsufficientEvidenceError : Error { using Error::Error; };

// structure
struct InconclusiveError : Error { using Error::Error; };
struct ThresholdViolationError : Error { using Error::Error; };
struct EmptyIntervalError : Error { using Error::Error; };

// generic precondition failures (bad parameter domains)
struct PreconditionFailedError : Error { using Error::Error; };

} // namespace sturmperm
