#pragma once

// Log-log least-squares fitting shared by kernel certification and the
// experiment harnesses.

#include <cstddef>
#include <utility>
#include <vector>

namespace mbv {

struct FitWindow {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open [begin, end)
};

// last ceil(n/2) indices: the operational reading of "sufficiently large w"
FitWindow upper_half_window(std::size_t n);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
};

// OLS of log E against log w over points with E > 0 inside the window;
// throws InsufficientData when fewer than 4 such points exist.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& points,
                     FitWindow window);

struct RateReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double target_alpha = 0.0;
  bool pass = false;  // slope <= -target_alpha + slope_tol
  FitWindow window;
};

RateReport make_rate_report(const FitResult& fit, FitWindow window, double target_alpha,
                            double slope_tol);

}  // namespace mbv
