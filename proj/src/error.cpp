#include "gravodiff/error.hpp"

#include <sstream>

namespace gravodiff {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

EvaluationFailure::EvaluationFailure(double alpha, double z, const std::string& what)
    : Error("Fermi integral evaluation failed (alpha=" + fmt(alpha) + ", z=" + fmt(z) + "): " + what),
      alpha_(alpha), z_(z) {}

StructuralViolation::StructuralViolation(std::string inequality, double z, const std::string& detail)
    : Error("structural inequality '" + inequality + "' violated at z=" + fmt(z) + ": " + detail),
      inequality_(std::move(inequality)), z_(z) {}

BracketExit::BracketExit(double target, double e_min, double e_max)
    : Error("energy target " + fmt(target) + " outside attainable range [" + fmt(e_min) + ", " +
            fmt(e_max) + "]"),
      target_(target), e_min_(e_min), e_max_(e_max) {}

ConfigError::ConfigError(const std::string& path, const std::string& message)
    : Error(path + ": " + message), path_(path) {}

} // namespace gravodiff
