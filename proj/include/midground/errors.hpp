#pragma once

#include <stdexcept>
#include <string>

namespace midground {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the operation (bad belief level,
/// invalid counts, malformed prior parameters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable user input (files, JSON, samples out of bounds).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Prior and likelihood share no mass, so the posterior is undefined.
class DegeneratePosteriorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AcceptanceStarvationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The requested belief level cannot be reached by any interval.
class UnachievableError : public Error {
 public:
  using Error::Error;
};

}  // namespace midground
