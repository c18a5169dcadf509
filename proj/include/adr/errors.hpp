#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adr {

/// Sizes of two operands disagree (field vs. grid, system vs. rhs, ...).
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A problem or method identifier is not in the registry.
class UnknownId : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of the numerics themselves, as opposed to bad input.
/// The CLI maps these to exit code 2.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularSystem : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class StabilityViolation : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// A state or nonlinearity value became NaN/Inf.
class NonFiniteState : public NumericalFailure {
public:
    NonFiniteState(const std::string& what, std::size_t node)
        : NumericalFailure(what), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Fewer than two usable (tau, error) pairs for an order fit.
class UndefinedOrder : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace adr
