// errors.hpp — exception types thrown across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace sqsl {

// State or parameter vector cannot be brought to unit norm (zero, non-finite,
// or further from unit norm than the documented tolerance).
struct NormalizationError : std::runtime_error {
    explicit NormalizationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation needed a sector below n_total = 0 (e.g. annihilation on the
// vacuum sector) or a positive photon number where none was given.
struct SectorUnderflow : std::runtime_error {
    explicit SectorUnderflow(const std::string& msg) : std::runtime_error(msg) {}
};

// Vector/matrix sizes do not match the fixed-N sector they claim to act on.
struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// The adaptive ODE stepper could not reach the requested accuracy.
struct IntegrationFailure : std::runtime_error {
    explicit IntegrationFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// A ratio whose denominator is identically zero for the given input.
struct UndefinedRatio : std::runtime_error {
    explicit UndefinedRatio(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be opened, written, or read.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sqsl
