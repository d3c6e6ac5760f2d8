#pragma once

#include <stdexcept>
#include <string>

namespace rexact {

// Base of every error caused by the model itself (CLI exit status 1).
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidModel : public ModelError {
public:
  using ModelError::ModelError;
};

class RedundantEquations : public ModelError {
public:
  RedundantEquations()
      : ModelError("det pi(z) is identically zero: redundant equations "
                   "(assumption violated: det pi(z) not identically zero)") {}
};

class BoundaryRoot : public ModelError {
public:
  using ModelError::ModelError;
};

class FactorSplitError : public ModelError {
public:
  using ModelError::ModelError;
};

class UnsupportedModel : public ModelError {
public:
  using ModelError::ModelError;
};

// Broken internal consistency check; always a bug.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace rexact
