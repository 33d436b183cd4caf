#pragma once

// Experiment harnesses. Each run builds sampled error tables
// E(lambda, w) = estimated V^phi[lambda (T_w f - f)], fits decay laws, and
// produces a machine-checkable report. Thresholds are harness tuning
// constants, not mathematical ones; they are carried in the reports.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mellin_bv/functions.hpp"
#include "mellin_bv/kernels.hpp"
#include "mellin_bv/mellin_op.hpp"
#include "mellin_bv/phi.hpp"
#include "mellin_bv/rate_fit.hpp"
#include "mellin_bv/variation.hpp"

namespace mbv {

struct ExperimentThresholds {
  double success_ratio = 0.1;          // E(w_max) < ratio * E(w_min)
  double success_floor = 1e-2;         // and E(w_max) < floor
  double counterexample_factor = 0.9;  // lower bound >= factor * phi(mu/2)
  double slope_tol = 0.25;             // pass when slope <= -alpha + tol
  double r2_min = 0.9;
  double generalized_slack = 0.25;     // 25% headroom for C * xi checks
  double inequality_slack = 1e-3;      // absolute slack in inequality checks
};

struct TableOptions {
  int grid_depth = 10;          // 2^depth + 1 base points per axis
  double box_m_max = 8.0;       // base grid spans [-M, M] in log coordinates
  int cluster_points = 25;      // one-sided count of w-scaled points per feature
  double cluster_scale = 0.4;   // spacing = cluster_scale / w
  OperatorQuad quad;
  std::vector<double> box_ladder = {1.0, 2.0, 4.0, 8.0};
  RefinementPolicy policy;      // depth_max unused by table DP; box depth is
  MarginalQuad marginal;
};

// T_w f - f sampled on a feature-aware grid (jump pairs, kink clusters)
SampledFunction error_table(const TestFunction& f, const KernelFamily& kernel,
                            double w, const TableOptions& opt);

// same table from a closed-form operator evaluation (counterexample setup)
SampledFunction error_table_closed_form(
    const TestFunction& f, const std::function<double(double w, double s)>& tw_f,
    double w, const TableOptions& opt);

struct ConvergenceRun {
  const TestFunction* f = nullptr;
  const KernelFamily* kernel = nullptr;
  PhiFunction phi = PhiFunction::classical();
  std::vector<double> w_ladder;
  std::vector<double> lambdas;  // descending
  TableOptions table;
  ExperimentThresholds thresholds;
};

struct ConvergenceReport {
  std::string function_name, kernel_name, phi_name;
  int dimension = 1;
  std::vector<double> w_ladder, lambdas;
  std::vector<std::vector<double>> table;  // [lambda index][w index]
  bool counterexample_mode = false;        // f not tagged ac_phi
  bool success = false;
  double witness_lambda = 0.0;             // largest passing lambda
  std::vector<std::optional<FitResult>> fits;  // per lambda, full-ladder fit
  ExperimentThresholds thresholds;
};

ConvergenceReport run_convergence(const ConvergenceRun& run);

struct CounterexampleReport {
  std::vector<double> mu_list, w_ladder;
  std::vector<std::vector<double>> lower_bounds;      // [mu][w] global estimates
  std::vector<double> thresholds;                     // 0.9 * phi(mu/2) per mu
  std::vector<double> restricted_limit;               // (0,1) estimate at w_max
  std::vector<double> phi_half_mu;                    // phi(mu/2) per mu
  std::vector<double> min_over_w;                     // per mu
  bool pass = false;  // every (mu, w) lower bound clears its threshold
  ExperimentThresholds used;
};

// fixed setup: f = step1d, gauss_weierstrass, N = 1, erfc closed form
CounterexampleReport run_counterexample(const std::vector<double>& mu_list,
                                        const std::vector<double>& w_ladder,
                                        const PhiFunction& phi,
                                        const TableOptions& opt,
                                        const ExperimentThresholds& thresholds);

struct RateRunReport {
  std::string function_name, kernel_name, phi_name;
  double alpha = 0.0;
  std::vector<double> w_ladder, lambdas;
  std::vector<std::vector<double>> table;  // [lambda][w]
  KernelCertification certification;
  std::vector<std::optional<RateReport>> per_lambda;  // window = upper half
  RateReport best;         // for the best lambda (largest passing)
  double best_lambda = 0.0;
  bool trivial_pass = false;  // E identically ~0
  ExperimentThresholds thresholds;
};

// certifies the kernel internally (alpha-singularity at the given deltas plus
// the near-moment condition), then fits the decay of E on the upper half
RateRunReport run_rate(const TestFunction& f, const KernelFamily& kernel,
                       const PhiFunction& phi, double alpha,
                       const std::vector<double>& w_ladder,
                       const std::vector<double>& lambdas, const TableOptions& opt,
                       const ExperimentThresholds& thresholds,
                       const std::vector<double>& deltas = {0.25, 0.5, 0.75},
                       double delta_tilde = 0.5);

// same, but with a caller-provided certification; throws
// PreconditionNotCertified when absent or computed for a different alpha
RateRunReport run_rate_certified(const TestFunction& f, const KernelFamily& kernel,
                                 const PhiFunction& phi, double alpha,
                                 const std::vector<double>& w_ladder,
                                 const std::vector<double>& lambdas,
                                 const TableOptions& opt,
                                 const ExperimentThresholds& thresholds,
                                 const std::optional<KernelCertification>& cert);

struct GeneralizedRateSpec {
  std::string tau_name = "logpow:1";
  std::string xi_name = "powinv:1";
  std::function<double(const double* t, int dimension)> tau;  // 0 iff t = 1
  std::function<double(double w)> xi;                         // -> 0
};

GeneralizedRateSpec make_tau_xi(const std::string& tau_spec,
                                const std::string& xi_spec);

struct GeneralizedRateReport {
  std::string function_name, kernel_name, phi_name;
  GeneralizedRateSpec spec;  // names only meaningful for reporting
  std::vector<double> w_ladder, lambdas;
  std::vector<std::vector<double>> table;
  double fitted_C = 0.0;         // from the first half of the ladder
  double best_lambda = 0.0;
  bool certified = false;        // xi-singularity and the tau near-condition
  bool non_informative = false;  // xi barely decreases (e.g. xi == 1)
  bool pass = false;
  RateReport fit;                // slope fit of E for the report
  ExperimentThresholds thresholds;
};

GeneralizedRateReport run_rate_generalized(const TestFunction& f,
                                           const KernelFamily& kernel,
                                           const GeneralizedRateSpec& spec,
                                           const PhiFunction& phi,
                                           const std::vector<double>& w_ladder,
                                           const std::vector<double>& lambdas,
                                           const TableOptions& opt,
                                           const ExperimentThresholds& thresholds,
                                           double delta_tilde = 0.5);

// Non-augmenting check (classical gauge, nonnegative kernel, lambda = 1):
// upper-style estimate of V[T_w f] against V_upper[f] + slack.
struct NonAugmentingSample {
  double w = 0.0;
  double v_transformed = 0.0;
  double v_original = 0.0;
  bool pass = false;
};
std::vector<NonAugmentingSample> check_non_augmenting(const TestFunction& f,
                                                      const KernelFamily& kernel,
                                                      const std::vector<double>& w_ladder,
                                                      const TableOptions& opt,
                                                      double slack = 1e-3);

// Error-bound inequality: estimated V^phi[lambda(T_w f - f)] (lower) against
// omega^phi(lambda A f, delta) + A^-1 V_upper^phi[2 lambda A f] * far_mass
// (upper side) + slack.
struct ErrorBoundSample {
  double lambda = 0.0, delta = 0.0, w = 0.0;
  double lhs = 0.0, omega_term = 0.0, far_term = 0.0, rhs = 0.0;
  bool pass = false;
};
std::vector<ErrorBoundSample> check_error_bound(
    const TestFunction& f, const KernelFamily& kernel, const PhiFunction& phi,
    const std::vector<double>& lambdas, const std::vector<double>& deltas,
    const std::vector<double>& w_list, const TableOptions& opt,
    const ExperimentThresholds& thresholds);

std::vector<double> default_w_ladder(int dimension);  // {2..128} N=1, {2..32} N=2

}  // namespace mbv
