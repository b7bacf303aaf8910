#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpqwn {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid indices, family mismatches, malformed scalars, out-of-domain calls.
struct DomainError : EngineError {
    using EngineError::EngineError;
};

// Attempt to bind or evaluate the inert delta(0) atom.
struct SingularAtomError : DomainError {
    using DomainError::DomainError;
};

// Carries the 1-based source position of the offending token.
struct ParseError : EngineError {
    std::size_t line;
    std::size_t col;
    ParseError(std::string msg, std::size_t line_, std::size_t col_)
        : EngineError("parse error at " + std::to_string(line_) + ":" +
                      std::to_string(col_) + ": " + std::move(msg)),
          line(line_), col(col_) {}
};

} // namespace rpqwn
