#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loewner {

// Bad arguments, schema violations, invalid polylines (CLI exit code 2).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures at run time (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularPointError : NumericalError {
    using NumericalError::NumericalError;
};

struct AmbiguityError : NumericalError {
    using NumericalError::NumericalError;
};

struct GeometryError : NumericalError {
    GeometryError(const std::string& what, std::size_t index)
        : NumericalError(what + " (vertex " + std::to_string(index) + ")"), vertex(index) {}
    std::size_t vertex;
};

struct StepError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace loewner
