#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mlspec {

// Common base so callers can catch any library error in one clause.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph violates a structural invariant (asymmetry, negative weight, self-loop, bad n).
struct InvalidGraph : Error {
    using Error::Error;
};

// Malformed input file content.
struct ParseError : Error {
    using Error::Error;
};

// Vertex id outside [0, n).
struct IndexError : Error {
    using Error::Error;
};

// Semantically invalid scalar value (e.g. negative edge weight in a file).
struct ValueError : Error {
    using Error::Error;
};

// Layers with differing vertex counts, or incompatible matrix shapes.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Underlying eigensolver failed to converge.
struct EigenFailure : Error {
    using Error::Error;
};

// Argument outside its documented range (e.g. embedding dimension k).
struct RangeError : Error {
    using Error::Error;
};

// Initial P for the joint decomposition is numerically singular.
struct SingularInit : Error {
    using Error::Error;
};

// Iteration budget exhausted; carries the last iterate so callers can inspect it.
struct NoConvergence : Error {
    std::vector<double> last_iterate;
    NoConvergence(const std::string& msg, std::vector<double> iterate)
        : Error(msg), last_iterate(std::move(iterate)) {}
};

// Label vectors of different lengths passed to a metric.
struct LengthMismatch : Error {
    using Error::Error;
};

// Invalid generator or run configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace mlspec
