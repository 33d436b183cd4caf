#pragma once

#include <stdexcept>
#include <string>

namespace mbv {

// Integrand produced NaN/Inf at a quadrature node; message carries the point.
struct NonFiniteIntegrand : std::runtime_error {
  explicit NonFiniteIntegrand(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive variation oracle refuses large inputs (exponential cost).
struct TooManyPoints : std::invalid_argument {
  explicit TooManyPoints(const std::string& what) : std::invalid_argument(what) {}
};

// Dimension outside the supported range (1..3) or no builtin for it.
struct UnknownDimension : std::invalid_argument {
  explicit UnknownDimension(const std::string& what) : std::invalid_argument(what) {}
};

// Log-log fit asked for with fewer than 4 usable points.
struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

// Rate experiment invoked without the kernel certification step.
struct PreconditionNotCertified : std::logic_error {
  explicit PreconditionNotCertified(const std::string& what) : std::logic_error(what) {}
};

// Experiment table missing entries needed for a verdict.
struct IncompleteTable : std::runtime_error {
  explicit IncompleteTable(const std::string& what) : std::runtime_error(what) {}
};

// Malformed config file or contradictory option values.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mbv
