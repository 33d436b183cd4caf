#include "mellin_bv/rate_fit.hpp"

#include <cmath>
#include <stdexcept>

#include "mellin_bv/errors.hpp"

namespace mbv {

FitWindow upper_half_window(std::size_t n) {
  const std::size_t half = (n + 1) / 2;
  return {n - half, n};
}

FitResult fit_loglog(const std::vector<std::pair<double, double>>& points,
                     FitWindow window) {
  if (window.end > points.size() || window.begin > window.end)
    throw std::invalid_argument("fit_loglog: window out of range");

  std::vector<double> xs, ys;
  for (std::size_t i = window.begin; i < window.end; ++i) {
    const auto& [w, e] = points[i];
    if (w > 0.0 && e > 0.0) {
      xs.push_back(std::log(w));
      ys.push_back(std::log(e));
    }
  }
  const std::size_t n = xs.size();
  if (n < 4)
    throw InsufficientData("fit_loglog: fewer than 4 positive points in the window (" +
                           std::to_string(n) + ")");

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0))
    throw InsufficientData("fit_loglog: degenerate abscissa (all w equal)");

  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.points_used = n;
  if (syy > 0.0) {
    const double ss_res = syy - r.slope * sxy;
    r.r_squared = 1.0 - ss_res / syy;
    if (r.r_squared < 0.0) r.r_squared = 0.0;
    if (r.r_squared > 1.0) r.r_squared = 1.0;
  } else {
    r.r_squared = 1.0;  // perfectly flat data: the zero-slope fit is exact
  }
  return r;
}

RateReport make_rate_report(const FitResult& fit, FitWindow window, double target_alpha,
                            double slope_tol) {
  RateReport rep;
  rep.slope = fit.slope;
  rep.intercept = fit.intercept;
  rep.r_squared = fit.r_squared;
  rep.target_alpha = target_alpha;
  rep.window = window;
  rep.pass = fit.slope <= -target_alpha + slope_tol;
  return rep;
}

}  // namespace mbv
