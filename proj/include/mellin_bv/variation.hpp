#pragma once

// Multidimensional phi-variation in the Tonelli style:
//
//   1-D:      V^phi_[a,b][g]  = sup over partitions of sum phi(|increments|)
//   sections: S_j(f, I)       = marginal Haar integral of the 1-D variation
//                               of the j-th sections over the box face
//   combined: C(f, I)         = euclidean norm of (S_1, ..., S_N)
//   interval: V^phi_I[f]      = sup over tensor partitions of sum_k C(f, J_k)
//   global:   V^phi[f]        = sup over boxes (monotone; ladder detects
//                               saturation)
//   modulus:  omega^phi(f, d) = sup over |1 - t| <= d of V^phi[tau_t f - f]
//
// All estimates are suprema over finite candidate families, hence lower
// bounds. On a fixed grid the 1-D sup is computed EXACTLY by dynamic
// programming over all sub-partitions (O(n^2)); for convex nonlinear phi the
// optimum need not use consecutive points, so the DP is the correct
// discretization, and it matches the exhaustive oracle bit-for-bit.
//
// var_upper_* run the same machinery at one depth finer with feature-aware
// grids; they serve as the "accurate side" when an inequality needs an upper
// estimate (for the classical gauge the DP equals the fine-grid sum of
// |increments|, which converges to the true total variation from below).

#include <functional>
#include <optional>
#include <vector>

#include "mellin_bv/box.hpp"
#include "mellin_bv/errors.hpp"
#include "mellin_bv/functions.hpp"
#include "mellin_bv/mellin_op.hpp"
#include "mellin_bv/phi.hpp"
#include "mellin_bv/quadrature.hpp"

namespace mbv {

struct Partition1D {
  std::vector<double> points;  // strictly increasing, endpoints included
  static Partition1D validated(std::vector<double> pts);
};

struct RefinementPolicy {
  int depth_max = 10;            // dyadic log-grid depth for 1-D grids
  double tol = 1e-4;             // relative refinement convergence
  int box_partition_depth = 3;   // per-axis dyadic depth for var_box
  // x-space points that must join every grid (jump pairs, kinks, clusters);
  // one list per axis, axis 0 used by the 1-D estimators
  std::vector<std::vector<double>> extra_points;
};

struct MarginalQuad {
  int nodes_per_axis = 32;
  QuadRule rule = QuadRule::gauss_legendre_composite;
};

struct VariationEstimate {
  double lower_bound = 0.0;
  int refinement_depth = 0;
  bool converged = false;
  std::vector<double> ladder_values;       // var_global: one per ladder box
  std::optional<std::vector<double>> breakdown;  // per-axis section values
};

using Scalar1D = std::function<double(double)>;

// one term of the 1-D sup: sum phi(|g(s_i) - g(s_{i-1})|) along the partition
double var1d(const Scalar1D& g, const PhiFunction& phi, const Partition1D& partition);

// exact sup over all sub-partitions of the sampled points (endpoints fixed)
double var1d_points(const std::vector<double>& values, const PhiFunction& phi);

// exhaustive oracle over all 2^(n-2) subsets; throws TooManyPoints for n > 14
double brute_force_var1d(const std::vector<double>& values, const PhiFunction& phi);

// DP estimate over nested dyadic log grids of [a, b] (plus policy extras)
VariationEstimate var1d_sup(const Scalar1D& g, const PhiFunction& phi, double a,
                            double b, const RefinementPolicy& policy);

// finer feature-aware estimate used on the upper side of inequalities
double var_upper_1d(const Scalar1D& g, const PhiFunction& phi, double a, double b,
                    const RefinementPolicy& policy);

// marginal Haar integral of the variation of sections along axis j
double section_functional(const TestFunction& f, const PhiFunction& phi, double lambda,
                          const Box& box, int axis_j, const MarginalQuad& mq,
                          const RefinementPolicy& policy);

// euclidean combination across axes; +inf sentinel if a section diverges
double box_functional(const TestFunction& f, const PhiFunction& phi, double lambda,
                      const Box& box, const MarginalQuad& mq,
                      const RefinementPolicy& policy,
                      std::vector<double>* per_axis = nullptr);

// sup over tensor partitions (dyadic depths 0..box_partition_depth, each also
// augmented with f's feature coordinates); NOT monotone under refinement for
// N >= 2, so the max runs over all generated partitions
VariationEstimate var_box(const TestFunction& f, const PhiFunction& phi, double lambda,
                          const Box& box, const MarginalQuad& mq,
                          const RefinementPolicy& policy);

// sup over the expanding cube ladder [e^-M, e^M]^N
VariationEstimate var_global(const TestFunction& f, const PhiFunction& phi,
                             double lambda, const std::vector<double>& box_ladder,
                             const MarginalQuad& mq, const RefinementPolicy& policy);

// deterministic sphere sampler: axis and diagonal directions at radii
// {delta, delta/2, delta/4}
std::vector<std::vector<double>> modulus_t_samples(int dimension, double delta);

// sup over sampled t of var_global(lambda * (tau_t f - f))
double modulus(const TestFunction& f, const PhiFunction& phi, double lambda,
               double delta, const std::vector<double>& box_ladder,
               const MarginalQuad& mq, const RefinementPolicy& policy);

// ---- sampled-table variants (tables from apply_on_grid) ----------------

// exact DP sup over the table's own grid restricted to the box
VariationEstimate var_global_table(const SampledFunction& table, const PhiFunction& phi,
                                   double lambda, const std::vector<double>& box_ladder,
                                   const RefinementPolicy& policy);

// DP over the full table range (the table is built feature-aware); the
// upper-role counterpart of var_global_table
double var_upper_table(const SampledFunction& table, const PhiFunction& phi,
                       double lambda);

std::vector<double> default_box_ladder();  // {1, 2, 4, 8}

}  // namespace mbv
