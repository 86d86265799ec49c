#pragma once

#include <stdexcept>
#include <string>

namespace resmat {

// Invalid input: malformed files, graphs that violate preconditions,
// out-of-domain arguments. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text that failed to parse. line is 1-based, 0 when unknown.
class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& message, int line = 0)
        : DomainError(line > 0 ? "line " + std::to_string(line) + ": " + message
                               : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// A cross-checked identity failed beyond tolerance: a numerical or logic
// bug rather than bad input. The CLI maps these to exit code 2.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace resmat
