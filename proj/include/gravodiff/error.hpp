#pragma once

#include <stdexcept>
#include <string>

namespace gravodiff {

// Base of every error raised by the library. Callers that only need to
// report can catch this; classifiers catch the concrete types.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class ShapeMismatch : public Error {
public:
  using Error::Error;
};

// Quadrature did not reach the requested tolerance.
class EvaluationFailure : public Error {
public:
  EvaluationFailure(double alpha, double z, const std::string& what);
  double alpha() const noexcept { return alpha_; }
  double z() const noexcept { return z_; }

private:
  double alpha_;
  double z_;
};

class OutOfRange : public Error {
public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
public:
  using Error::Error;
};

class StructuralViolation : public Error {
public:
  StructuralViolation(std::string inequality, double z, const std::string& detail);
  const std::string& inequality() const noexcept { return inequality_; }
  double sample() const noexcept { return z_; }

private:
  std::string inequality_;
  double z_;
};

class StepFailure : public Error {
public:
  using Error::Error;
};

class DegenerateEos : public Error {
public:
  using Error::Error;
};

// The requested energy is not attainable for temperatures in [a, b].
class BracketExit : public Error {
public:
  BracketExit(double target, double e_min, double e_max);
  double target() const noexcept { return target_; }
  double attainable_min() const noexcept { return e_min_; }
  double attainable_max() const noexcept { return e_max_; }

private:
  double target_;
  double e_min_;
  double e_max_;
};

class UndefinedResidual : public Error {
public:
  using Error::Error;
};

// Configuration problems; the message is prefixed with the offending key path.
class ConfigError : public Error {
public:
  ConfigError(const std::string& path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

} // namespace gravodiff
