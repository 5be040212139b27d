#pragma once

#include <stdexcept>
#include <string>

namespace fracnodal {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument, dimension mismatch or violated precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Requested regime is outside what the discretization supports (e.g. 2α ≥ N).
class UnsupportedRegime : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Input data violates a structural hypothesis on V, K or f.
class HypothesisViolation : public Error {
public:
    using Error::Error;
};

/// A root bracket could not be established; usually a symptom of a hypothesis violation.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// The norm operator could not be factorized.
class AssemblyError : public Error {
public:
    using Error::Error;
};

/// The planar map vanishes (numerically) on the boundary of the rectangle.
class DegenerateBoundary : public Error {
public:
    using Error::Error;
};

/// Boundary sampling stayed too coarse to resolve the winding of the map.
class ResolutionError : public Error {
public:
    using Error::Error;
};

}  // namespace fracnodal
