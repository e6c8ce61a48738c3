#pragma once

#include <stdexcept>
#include <string>

namespace stoq {

// Base for all library errors so callers can catch the whole family at once.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionOverflow : public Error {
 public:
  using Error::Error;
};

class NonFiniteCoefficient : public Error {
 public:
  using Error::Error;
};

class SymmetryViolation : public Error {
 public:
  using Error::Error;
};

class ComplexEntries : public Error {
 public:
  using Error::Error;
};

class NegativeShift : public Error {
 public:
  using Error::Error;
};

class LocalityViolation : public Error {
 public:
  using Error::Error;
};

class OverlapAmbiguity : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double best_residual)
      : Error(what), best_residual(best_residual) {}
  double best_residual;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class RetriesExhausted : public Error {
 public:
  using Error::Error;
};

class StepLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NormDriftExceeded : public Error {
 public:
  using Error::Error;
};

class IsolatedVertex : public Error {
 public:
  using Error::Error;
};

class SubsetTooLarge : public Error {
 public:
  using Error::Error;
};

class EmptySubset : public Error {
 public:
  using Error::Error;
};

class GraphTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace stoq
