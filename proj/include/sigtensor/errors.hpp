#pragma once

#include <stdexcept>
#include <string>

namespace sigtensor {

// Input violates a genericity hypothesis (a required denominator vanishes).
class NonGenericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An n-th root does not exist in the active scalar mode.
class RootUnavailableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative or floating point procedure did not reach its tolerance.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sigtensor
