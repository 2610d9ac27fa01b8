#pragma once

#include <stdexcept>
#include <string>

namespace wavematch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-domain argument (angles, compression ratios, odd filters).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Lengths that do not fit together: non power-of-two signals, mismatched vectors.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Decomposition depth outside 1..log2(N).
class PlanError : public Error {
public:
    using Error::Error;
};

/// A quantity is undefined for the given data (zero energy, zero variance).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Every cell of a surface is missing.
class NoMinimumError : public Error {
public:
    using Error::Error;
};

} // namespace wavematch
