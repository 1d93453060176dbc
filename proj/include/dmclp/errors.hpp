#pragma once

#include <stdexcept>
#include <string>

namespace dmclp {

// Bad user input: malformed files, inconsistent data, violated preconditions.
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, int line)
        : InputError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Refusal to run a combinatorial routine past its documented size guard.
// The CLI maps this to exit code 3.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal solver failure (iteration cap, numerical breakdown). Never used to
// signal infeasibility, which is a regular outcome.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dmclp
