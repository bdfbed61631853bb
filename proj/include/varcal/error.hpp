#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varcal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected, const std::string& message)
        : Error(message + " at offset " + std::to_string(offset) +
                (expected.empty() ? std::string{} : " (expected " + expected + ")")),
          offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(std::string name)
        : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Evaluation left the domain of a function (sqrt of a negative, ln of a
/// non-positive, division by zero, pole of tan/cot, overflow).
class DomainError : public Error {
public:
    DomainError(std::string subexpression, std::string point, const std::string& what)
        : Error(what + " in '" + subexpression + "' at " + point),
          subexpression_(std::move(subexpression)), point_(std::move(point)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }
    const std::string& point() const noexcept { return point_; }

private:
    std::string subexpression_;
    std::string point_;
};

/// The Euler-Lagrange equation does not contain y'' (d^2L/dyp^2 == 0).
class DegenerateLagrangian : public Error {
public:
    using Error::Error;
};

/// A numeric kernel failed: no sign change, iteration cap, quadrature failure,
/// or a domain error raised while integrating.
class SolverError : public Error {
public:
    using Error::Error;
};

/// The problem data violates a precondition that depends on user input
/// (endpoint ordering, curve above the starting height, ...).
class InfeasibleInput : public Error {
public:
    using Error::Error;
};

}  // namespace varcal
