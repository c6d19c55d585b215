#pragma once

#include <stdexcept>
#include <string>

namespace binrec {

/// Base class for all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

/// An input violates an operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// A configured resource budget (factoring steps, interval precision) ran out.
class ResourceError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// An exact identity that must hold failed. Always a bug or a counterexample.
class IdentityError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

inline void check_identity(bool cond, const std::string& what) {
    if (!cond) throw IdentityError(what);
}

}  // namespace binrec
