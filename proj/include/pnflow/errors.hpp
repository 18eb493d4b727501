#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnflow {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Malformed input text (edge lists, seed files).
class ParseError : public Error {
public:
    ParseError(const std::string &msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Input violates a structural precondition (self-loop, bad parameter, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Graph is not connected and no component selection was requested.
class ConnectivityError : public Error {
public:
    using Error::Error;
};

/// Total source mass exceeds the volume of the graph.
class InfeasibleMassError : public Error {
public:
    using Error::Error;
};

/// Requested norm exponent outside the supported range p >= 2.
class UnsupportedExponentError : public Error {
public:
    using Error::Error;
};

/// Sweep cut called on an empty or all-of-V support.
class DegenerateSupportError : public Error {
public:
    using Error::Error;
};

/// Flow recovery requested from a solution that did not converge.
class StaleSolutionError : public Error {
public:
    using Error::Error;
};

} // namespace pnflow
