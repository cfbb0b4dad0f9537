#pragma once

#include <stdexcept>
#include <string>

namespace l2pos {

// Caller handed us something outside an operation's contract.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A matrix or operator that must be positive definite is not.
struct DefinitenessError : std::runtime_error {
    explicit DefinitenessError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solve did not converge or the right-hand side is inconsistent.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature resolution too coarse for the requested evaluation.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace l2pos
