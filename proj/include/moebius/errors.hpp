#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

// Each subclass maps to one CLI exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept = 0;
};

class ParseError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class PreconditionError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class ResourceGuardError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

class InvariantError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

} // namespace moebius
