#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fmlab {

// Formula text did not conform to the grammar, or used undeclared /
// mis-aritied symbols. Carries the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Semantic failure during evaluation: unbound variable, uninterpreted
// symbol, out-of-range element designator, precondition violation.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad run configuration (unknown family, malformed ladder, invalid index...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fmlab
