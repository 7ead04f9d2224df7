#pragma once

#include <stdexcept>
#include <string>

namespace sylvan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition does not hold (dimension mismatch, invalid
/// hedge, non-torsionless field, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Division by zero or operands taken from different fields.
class FieldError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Exhaustive subset enumeration would exceed the configured cap.
class EnumerationCapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace sylvan
