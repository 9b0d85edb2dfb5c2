#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace realpt {

/// Base of every error the library raises. The CLI maps the subclasses onto
/// its exit-status contract.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic outside the domain of an operation (inverse of zero, singular matrix).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input data violating a stated invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A call whose precondition does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Well-formed input whose shape the library does not handle.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// An element needs roots of unity outside the session field.
class ConductorError : public Error {
public:
    ConductorError(const std::string& what, std::int64_t required)
        : Error(what + " (required conductor " + std::to_string(required) + ")"),
          required_(required) {}
    std::int64_t required() const { return required_; }

private:
    std::int64_t required_;
};

/// Malformed problem or certificate file; `where` names the offending field.
class ParseError : public Error {
public:
    ParseError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

}  // namespace realpt
