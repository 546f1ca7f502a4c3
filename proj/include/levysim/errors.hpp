#pragma once

#include <stdexcept>
#include <string>

namespace levysim {

/// Vector or matrix operands whose sizes do not fit together.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pair or linear index outside its valid range.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Matrix that violates a structural precondition (symmetry, definiteness).
class MatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Scalar parameter outside the supported domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace levysim
