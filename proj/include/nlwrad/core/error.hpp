#pragma once

#include <stdexcept>
#include <string>

namespace nlwrad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: parameters outside the domain of an operation or a
/// malformed configuration.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A requested window, time or node lies outside the available data.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or runaway amplitudes during a time evolution.
class NumericAbort : public Error {
public:
    using Error::Error;
};

/// The operation is defined only for some dimensions.
class NotApplicable : public Error {
public:
    using Error::Error;
};

}  // namespace nlwrad
