#pragma once

#include <stdexcept>
#include <string>

namespace sosdw {

// Error taxonomy for the whole library. The C API maps each class to a
// status code; inside the core we just throw.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (|p| too large, wrong root of unity,
// annulus violated, ...).
struct DomainError : Error {
    using Error::Error;
};

// A theta/bracket factor required in a denominator vanishes (or nearly so).
// The message names the offending factor.
struct PoleError : Error {
    using Error::Error;
};

// Overflow or a non-finite intermediate value.
struct NumericError : Error {
    using Error::Error;
};

// An enumeration or size cap would be exceeded.
struct ResourceError : Error {
    using Error::Error;
};

// Malformed input data (invalid height matrix / ASM, bad flag combination).
struct UsageError : Error {
    using Error::Error;
};

} // namespace sosdw
