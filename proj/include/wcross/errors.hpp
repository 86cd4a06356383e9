#ifndef WCROSS_ERRORS_HPP
#define WCROSS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcross {

/// Inputs outside the domain an operation is defined (or claimed) on.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or search would exceed its configured size limit.
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed family or configuration file. line() is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace wcross

#endif  // WCROSS_ERRORS_HPP
