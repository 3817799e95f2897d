#pragma once

#include <stdexcept>
#include <string>

namespace jerkseg {

/// Base class for all library errors.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid input data: parameter positivity, profile ordering, config schema.
class validation_error : public error {
  public:
    using error::error;
};

/// The line search could not locate a root (parameter regime outside the
/// generic case, or an inconsistent bracket).
class planning_error : public error {
  public:
    using error::error;
};

/// A numeric procedure failed: missing zero, unbracketed solve, exceeded
/// grid cap, diverged fit.
class numerical_error : public error {
  public:
    using error::error;
};

}  // namespace jerkseg
