#pragma once

#include <stdexcept>
#include <string>

namespace coringlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// A K-level map does not descend to the balanced tensor product.
class NotBalanced : public Error {
 public:
  using Error::Error;
};

/// A runtime-checked equalizer preservation hypothesis did not hold.
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(std::string which, const std::string& what)
      : Error(what), which_(std::move(which)) {}
  const std::string& which() const { return which_; }

 private:
  std::string which_;
};

class NotQuasiFinite : public Error {
 public:
  using Error::Error;
};

class TriangleFailure : public Error {
 public:
  using Error::Error;
};

/// A construction produced an object that fails its own axioms; the input
/// was inconsistent.
class InternalAxiomError : public Error {
 public:
  using Error::Error;
};

class ValidationFailed : public Error {
 public:
  using Error::Error;
};

class CertificateMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace coringlab
