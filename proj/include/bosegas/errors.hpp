#pragma once

#include <stdexcept>
#include <string>

namespace bosegas {

// Argument errors use std::invalid_argument. The types below cover the
// remaining failure classes the CLI maps onto distinct exit codes.

/// A request that is well formed but beyond a documented capability limit
/// (partition length, particle count).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Floating point breakdown: singular matrix, non-finite integrand.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two spectral variables closer than the kernel's guard distance.
class NearSingularityError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace bosegas
