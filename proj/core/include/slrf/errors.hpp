#pragma once

#include <stdexcept>
#include <string>

namespace slrf {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A required column is missing or a schema definition is malformed.
class schema_error : public error {
public:
    using error::error;
};

/// A cell could not be parsed; the message carries the file line number.
class parse_error : public error {
public:
    using error::error;
};

/// A label string is not part of the closed class set.
class label_error : public error {
public:
    using error::error;
};

/// Invalid configuration: sizes that do not add up, unknown keys, bad values.
class config_error : public error {
public:
    using error::error;
};

/// An operation was called outside its domain (empty input, zero total, ...).
class domain_error : public error {
public:
    using error::error;
};

/// The candidate pool has no samples left to acquire.
class pool_exhausted_error : public error {
public:
    using error::error;
};

/// Run results with incongruent shapes cannot be aggregated.
class aggregation_error : public error {
public:
    using error::error;
};

/// Filesystem-level failure (unreadable file, unwritable directory).
class io_error : public error {
public:
    using error::error;
};

} // namespace slrf
