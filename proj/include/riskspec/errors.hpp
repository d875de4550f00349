#pragma once

#include <stdexcept>

namespace riskspec {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violated: invalid region, bad parameter, negative support, ...
struct DomainError : Error {
    using Error::Error;
};

// An iterative routine hit its evaluation cap before certifying the requested tolerance.
struct ToleranceError : Error {
    using Error::Error;
};

// Adaptive quadrature could not reach its tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

// A quantity (e.g. an MGF value) exceeds the double range.
struct OverflowError : Error {
    using Error::Error;
};

// Malformed input file / JSON.
struct ParseError : Error {
    using Error::Error;
};

} // namespace riskspec
