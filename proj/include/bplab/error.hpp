#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bplab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (non-unit direction,
/// singular matrix, odd dimension where an even one is needed, ...).
class InputDomainError : public Error {
 public:
  using Error::Error;
};

/// A body oracle produced a non-positive or non-finite radius.
class BodyIntegrityError : public Error {
 public:
  using Error::Error;
};

/// A density oracle produced a negative or non-finite value.
class DensityIntegrityError : public Error {
 public:
  using Error::Error;
};

/// Unsupported or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Adaptive refinement did not converge.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// A body with zero (or infinite) measure was passed where a proper one is required.
class DegenerateBodyError : public Error {
 public:
  using Error::Error;
};

/// Truncated expansion does not resolve the input to the requested tolerance.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// An integrand oracle failed at a specific quadrature node.
class EvaluationError : public Error {
 public:
  EvaluationError(std::size_t node, const std::string& what)
      : Error("evaluation failed at node " + std::to_string(node) + ": " + what), node_(node) {}

  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

}  // namespace bplab
