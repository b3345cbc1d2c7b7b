#pragma once

#include <stdexcept>
#include <string>

namespace frameforge {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed values: non-finite entries, ragged vectors, bad edit indices,
// incompatible shapes, schema violations.
struct InvalidInput : Error {
    using Error::Error;
};

// Index past the end of a finite sequence.
struct OutOfRange : Error {
    using Error::Error;
};

// An exact answer was requested for an object that only admits
// truncation-based analysis.
struct UnsupportedExact : Error {
    using Error::Error;
};

// Canonical dual requested for a sequence whose frame operator is singular.
struct NotAFrame : Error {
    using Error::Error;
};

// Unknown gallery entry.
struct NotFound : Error {
    using Error::Error;
};

}  // namespace frameforge
