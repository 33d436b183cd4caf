#pragma once

// Operator evaluation: (T_w f)(s) = integral of K_w(t) f(st) d mu(t). In log
// coordinates this is a convolution; panels are split at the kernel's own
// breakpoints and at the (s-dependent) images of f's jumps and kinks, so the
// composite rule keeps full order across discontinuities.

#include <vector>

#include "mellin_bv/functions.hpp"
#include "mellin_bv/kernels.hpp"
#include "mellin_bv/quadrature.hpp"

namespace mbv {

struct OperatorQuad {
  double half_width = 0.0;  // 0 = auto (default_half_width(w))
  int nodes_per_axis = 0;   // 0 = auto (default_nodes_per_axis)
  QuadRule rule = QuadRule::gauss_legendre_composite;
};

struct OperatorEvaluation {
  const KernelFamily* kernel = nullptr;
  const TestFunction* f = nullptr;
  double w = 1.0;
  OperatorQuad quad;
};

double apply(const OperatorEvaluation& op, const std::vector<double>& s);

// tensor sampling grid; axis points are log-coordinates (v = log s)
struct SampledGrid {
  std::vector<std::vector<double>> axis_log_points;  // sorted, strictly increasing
  int dimension() const { return static_cast<int>(axis_log_points.size()); }
  std::size_t total_points() const;
};

SampledGrid default_s_grid(int dimension);  // 257 log-uniform points on [e^-5, e^5]
SampledGrid uniform_log_grid(int dimension, int points_per_axis, double v_lo,
                             double v_hi);

// values in row-major order, axis 0 slowest
struct SampledFunction {
  SampledGrid grid;
  std::vector<double> values;
};

SampledFunction apply_on_grid(const OperatorEvaluation& op, const SampledGrid& grid);
SampledFunction sample_on_grid(const TestFunction& f, const SampledGrid& grid);

// closed form of T_w step1d under gauss_weierstrass (N = 1):
// 0.5 * erfc(w * log(1/s))
double gw_step_closed_form(double w, double s);

}  // namespace mbv
