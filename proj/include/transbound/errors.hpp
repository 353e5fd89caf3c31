#ifndef TRANSBOUND_ERRORS_HPP
#define TRANSBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace transbound {

// Base class for all library errors. Subclasses map to CLI exit codes:
// config/parse/contract problems exit 2, numeric failures exit 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (wrong field count, bad number, ...).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Unknown entity/relation name under a frozen vocabulary.
class VocabError : public Error {
public:
    using Error::Error;
};

// Invalid configuration or precondition violation detected up front.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Caller broke an operation contract (negative score, missing slack, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

// Rule kind that is parsed but has no regularizer formula.
class UnsupportedRuleError : public Error {
public:
    using Error::Error;
};

// Non-finite values encountered during optimization.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace transbound

#endif
