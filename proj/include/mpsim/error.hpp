#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpsim {

// Malformed input text (JSON or CSV). `position` is a byte offset when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Well-formed input that violates a schema or domain constraint.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mpsim
