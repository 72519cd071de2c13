#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lecf {

// Precondition violations: negative inputs, unbalanced GCFs, non-minimal
// distinguished elements, malformed text. The CLI maps these to exit code 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed textual input. `position` is the 0-based offset of the first
// offending character.
class ParseError : public DomainError {
public:
    ParseError(const std::string& what, std::size_t position)
        : DomainError(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A configured cap (ideal count, element count, catalog size) was exceeded.
// The CLI maps these to exit code 3.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lecf
