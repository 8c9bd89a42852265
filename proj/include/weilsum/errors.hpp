#pragma once

#include <stdexcept>
#include <string>

namespace weilsum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    using Error::Error;
};

struct ReducibleModulusError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

struct NotCoprimeError : Error {
    using Error::Error;
};

struct NotInvertibleExponentError : Error {
    using Error::Error;
};

struct MixedPrimeError : Error {
    using Error::Error;
};

struct MixedFieldError : Error {
    using Error::Error;
};

struct BadGaloisIndexError : Error {
    using Error::Error;
};

struct WrongResidueError : Error {
    using Error::Error;
};

struct ZeroCoefficientError : Error {
    using Error::Error;
};

struct TooLargeKError : Error {
    using Error::Error;
};

// A verified mathematical identity failed; carries the name of the check.
struct CheckFailedError : Error {
    std::string check;
    CheckFailedError(std::string check_name, const std::string& msg)
        : Error(check_name + ": " + msg), check(std::move(check_name)) {}
};

struct InconsistentError : Error {
    using Error::Error;
};

}  // namespace weilsum
