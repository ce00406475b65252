#pragma once

#include <stdexcept>
#include <string>

namespace constructive {

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mathematically meaningless request: zero denominator, sqrt of a negative,
/// division by an exact rational zero, locate with a >= b.
struct DomainError : Error {
    using Error::Error;
};

/// Supplied evidence failed re-certification (an invalid apartness witness,
/// a falsified zero claim). Signals a caller bug, never "don't know".
struct EvidenceError : Error {
    using Error::Error;
};

/// A configured bound was exceeded (truth-table atom limit, bit-length cap).
struct ResourceError : Error {
    using Error::Error;
};

/// A data structure violated its own contract (non-nested intervals).
struct InvariantError : Error {
    using Error::Error;
};

/// Working precision ran out after the allowed retries.
struct PrecisionError : Error {
    using Error::Error;
};

/// Syntax error; `position` is a 0-based byte offset into the input.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what), position(pos) {}
};

} // namespace constructive
