#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A distribution or model parameter lies outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Vector/matrix dimensions do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Index (action, item, edge, state) out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Cholesky factorization met a non-positive pivot.
class FactorizationError : public Error {
public:
    FactorizationError(std::size_t pivot, double value)
        : Error("cholesky: non-positive pivot " + std::to_string(value) + " at index " +
                std::to_string(pivot)),
          pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// Iterative solver hit its iteration cap; carries the last iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> last_iterate)
        : Error(what), last_iterate_(std::move(last_iterate)) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

private:
    std::vector<double> last_iterate_;
};

/// An agent or environment broke its interface contract.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Problem too large for an exhaustive routine.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Underflow, divergence or other floating-point breakdown.
class NumericalError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace tslab
