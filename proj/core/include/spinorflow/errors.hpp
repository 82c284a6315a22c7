#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinorflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a shape operator is not part of a left-invariant parallel
/// Cauchy pair. Carries the list of violated relations.
class InvalidPair : public Error {
 public:
  explicit InvalidPair(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Requested time lies at or beyond the boundary of the flow's lifespan.
class SingularTime : public Error {
 public:
  SingularTime(double t, const std::string& detail);
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Requested time lies outside the tabulated lapse domain.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration could not make progress.
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input document does not follow the expected JSON schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinorflow
