#pragma once

// Convex gauges used to measure oscillation. The admissible class requires
// phi convex, vanishing exactly at 0, with phi(u)/u -> 0 as u -> 0+. The
// classical gauge phi(u) = u fails the last condition; it is still offered
// (total variation needs it) but carries an explicit exemption flag that
// shows up in validation reports.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mbv {

enum class PhiKind { power, classical, custom };

class PhiFunction {
 public:
  static PhiFunction power(double p);  // phi(u) = u^p, requires p > 1
  static PhiFunction classical();      // phi(u) = u, flagged exemption
  static PhiFunction custom(std::string name, std::function<double(double)> fn);

  double operator()(double u) const;

  PhiKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool in_admissible_class() const { return kind_ != PhiKind::classical; }

  // exponent for the power-law fast paths; nullopt for custom gauges
  std::optional<double> power_exponent() const;

 private:
  PhiFunction() = default;
  PhiKind kind_ = PhiKind::classical;
  std::string name_;
  double p_ = 1.0;
  std::function<double(double)> fn_;
};

struct PhiAxiomCheck {
  std::string axiom;
  bool pass = false;
  double witness_u = 0.0;  // grid point where the check failed (if it did)
  std::string note;
};

struct PhiValidation {
  std::vector<PhiAxiomCheck> checks;
  bool exempt_classical = false;  // classical gauge: limit failure is expected
  bool all_pass() const;
};

// Checks phi(0) = 0, positivity away from 0, monotonicity, midpoint
// convexity (relative tolerance 1e-10) and the vanishing of phi(u)/u near 0
// on the given grid.
PhiValidation validate_phi(const PhiFunction& phi, const std::vector<double>& grid);

// 64 log-spaced points in [1e-6, 1e3]
std::vector<double> default_phi_grid();

// Scaling constants lambda = 2^0, 2^-1, ..., 2^-k_max, descending; searches
// walk it from the largest value down.
struct LambdaGrid {
  std::vector<double> values;
  static LambdaGrid dyadic(int k_max = 20);
};

}  // namespace mbv
