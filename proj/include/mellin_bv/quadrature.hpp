#pragma once

// Haar-measure integration on R^N_+ (N = 1..3). Every integral is computed
// after the substitution u = log t, which turns d mu(t) = <t>^-1 dt into
// plain Lebesgue measure on a log box [-R, R]^N:
//
//   integral F d mu = integral F(e^u) du.
//
// The box is cut into tensor panels (per-axis breakpoints can force panel
// edges onto jump or kink locations; u = 0 is always an edge), each panel
// carries a fixed local rule (composite 8-point Gauss-Legendre by default),
// and cells flagged as touching a radial kink at the origin are refined
// geometrically toward it. Region-restricted integrals split the box along
// the set |1 - t| = delta by interval classification of cells, dyadic
// subdivision of boundary-cut cells (4 levels) and a sharp per-node
// indicator on whatever stays cut.
//
// Determinism: cells are processed in lexicographic order into per-cell
// slots and reduced with the fixed striped scheme from the simd module, so
// results are bit-stable under any MELLIN_BV_THREADS setting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mellin_bv/errors.hpp"

namespace mbv {

enum class QuadRule { midpoint, trapezoid, gauss_legendre_composite };

struct LogDomainQuadrature {
  int dimension = 1;
  double half_width = 40.0;  // R
  int nodes_per_axis = 256;  // normalized up to the rule's panel granularity
  QuadRule rule = QuadRule::gauss_legendre_composite;
  bool estimate_errors = true;

  // validates (N in 1..3, R > 0, nodes >= 8) and normalizes nodes_per_axis
  static LogDomainQuadrature make(int dimension, double half_width, int nodes_per_axis,
                                  QuadRule rule = QuadRule::gauss_legendre_composite);
};

// default box half-width for operator scale w
double default_half_width(double w);
// widened so the region boundary |1 - t| = delta stays inside the box
double region_half_width(double w, double delta);
// nodes resolving features of scale 1/w across [-R, R]
int default_nodes_per_axis(double w, double half_width);

// Integrand in log coordinates: eval_points fills out[k] = F(exp(u_k)) for
// packed points u_flat[k*N + j], k < n. Implementations are expected to
// vectorize internally; they must be pure and thread-safe.
struct LogIntegrand {
  int dimension = 1;
  std::function<void(const double* u_flat, std::size_t n, double* out)> eval_points;
  // per-axis log-coordinate locations that must become panel edges
  std::vector<std::vector<double>> axis_breakpoints;
  // radial non-smoothness at u = 0 (e.g. exp(-w|u|), |u|^alpha factors)
  bool nonsmooth_at_origin = false;
};

// wraps a pointwise t-space integrand (t passed as an N-vector)
LogIntegrand wrap_pointwise(int dimension,
                            std::function<double(const double* t)> f_of_t);

struct QuadratureResult {
  double value = 0.0;
  double est_truncation_error = 0.0;     // |box 2R - box R| at coarse resolution
  double est_discretization_error = 0.0; // |full - half resolution|
  std::int64_t nodes_used = 0;           // main-run integrand evaluations
};

QuadratureResult integrate_haar(const LogIntegrand& f, const LogDomainQuadrature& q);

enum class Region { near, far };

// restriction to {t : |1 - t| <= delta} (near) or its complement (far)
QuadratureResult integrate_haar_region(const LogIntegrand& f,
                                       const LogDomainQuadrature& q, Region region,
                                       double delta);

// Per-axis composite rule over [lo, hi]: base_panels uniform panels (forced
// even so 0 lands on an edge for symmetric ranges) plus breakpoint edges.
// Exposed for the operator module, which runs its own tensor loops.
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
AxisRule build_axis_rule(double lo, double hi, int base_panels, QuadRule rule,
                         const std::vector<double>& breakpoints);

}  // namespace mbv
