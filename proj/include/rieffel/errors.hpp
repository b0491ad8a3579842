#pragma once

#include <stdexcept>
#include <string>

namespace rieffel {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not match (wrong group, wrong dimension, wrong leg).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Input is well-shaped but violates a mathematical precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not reach a clean decision.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rieffel
