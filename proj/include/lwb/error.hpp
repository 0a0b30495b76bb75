#pragma once

#include <stdexcept>
#include <string>

namespace lwb {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the formula / law / file parsers; pos is a 0-based byte offset
// into the offending input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
    std::size_t pos;
};

// Raised when a consequence oracle returns "unknown" in a context that
// requires a definite answer.
struct UnknownVerdict : Error {
    using Error::Error;
};

} // namespace lwb
