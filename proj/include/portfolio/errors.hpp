#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace portfolio {

// Malformed input stream. line is 1-based; 0 when no single line is at fault.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Workspace lock already held by another process.
class LockError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Workspace or ledger state inconsistent with the request.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace portfolio
