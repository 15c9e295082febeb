#pragma once

#include <stdexcept>
#include <string>

namespace swarmlab {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value violates a documented precondition.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// The model exponent s(r+lambda)/mu left the representable range.
// The model predicts effectively permanent availability in that regime.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, double exponent)
        : Error(what), exponent_(exponent) {}

    double exponent() const noexcept { return exponent_; }

private:
    double exponent_;
};

class SimulationError : public Error {
public:
    using Error::Error;
};

// A schedule transfer sends a chunk its sender does not hold yet.
class CausalityViolation : public Error {
public:
    CausalityViolation(const std::string& what, std::size_t transfer_index)
        : Error(what), index_(transfer_index) {}

    std::size_t transfer_index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Malformed trace input. line() is 1-based; 0 when not tied to a line.
class TraceParseError : public Error {
public:
    TraceParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class TraceOrderError : public TraceParseError {
public:
    using TraceParseError::TraceParseError;
};

class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace swarmlab
