// errors.hpp — exception hierarchy for contract and numerical failures
#pragma once

#include <stdexcept>
#include <string>

namespace corrproj {

// incompatible or malformed operator dimensions
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// input violates a mathematical contract (non-Hermitian, not a projection, ...)
struct ContractError : std::invalid_argument {
    explicit ContractError(const std::string& msg) : std::invalid_argument(msg) {}
};

// caller-supplied data fails an operation precondition (negative rate,
// degenerate band weight, singular gauge matrix, non-orthogonal projectors, ...)
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// numerical blow-up during time evolution (NaN/Inf), message names the step
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// problem size exceeds the configured dense-solver cap
struct SizeCapError : std::runtime_error {
    explicit SizeCapError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace corrproj
