#pragma once

#include <stdexcept>
#include <string>

namespace coss {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad input data: malformed corpus lines, unknown article ids, unreadable files.
class InputError : public Error {
public:
    using Error::Error;
};

/// Bad configuration: invalid weights, missing semantic backend, unknown mode.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A structural invariant was violated: dangling edge refs, backward-in-time
/// edges, schema mismatches on load.
class IntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace coss
