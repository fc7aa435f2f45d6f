#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracspec {

// Argument outside the domain of a scalar function or parameter set.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An iterative routine (root finder, quadrature construction) did not converge.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed coefficient expression.  offset is the byte position in the source.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation of a well-formed expression left its domain (log/sqrt of a
// negative number, division by zero, non-finite result).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Problem data rejected at assembly time, e.g. a non-positive diffusivity sample.
class CoefficientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Zero pivot encountered during LU factorization.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot, const std::string& message)
        : std::runtime_error(message), pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

// Invalid run configuration (missing/ill-typed fields, inconsistent values).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracspec
