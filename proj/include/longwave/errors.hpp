#pragma once

#include <stdexcept>
#include <string>

namespace longwave {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration file or config-level value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Parameter outside an operation's documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Left operator (1 + b2 d^2 Dxx) is not invertible at some grid mode.
class InvertibilityViolation : public Error {
public:
    using Error::Error;
};

/// Kernel symbol nonpositive (or otherwise inadmissible) at a grid mode.
class EllipticityViolation : public Error {
public:
    using Error::Error;
};

/// Antiderivative requested for a field whose mean is not (numerically) zero.
class NonZeroMeanError : public Error {
public:
    using Error::Error;
};

/// Energy functional evaluated outside its positivity regime.
class NegativeEnergyError : public Error {
public:
    using Error::Error;
};

/// Regression input at noise floor; no meaningful fit.
class DegenerateFitError : public Error {
public:
    using Error::Error;
};

} // namespace longwave
