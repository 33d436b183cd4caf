#pragma once

// Kernel families on R^N_+ and the numerical checks that certify them as
// approximate identities (unit Haar mass, bounded L1 norms, vanishing far
// mass) and as alpha-singular with the near-moment condition needed for
// rate results. Three builtin families:
//
//   gauss_weierstrass:  G_w(t) = (w^N / pi^{N/2}) exp(-w^2 |log t|^2)
//   picard:             P_w(t) = (w^N Gamma(N/2) / (2 pi^{N/2} Gamma(N))) exp(-w |log t|)
//   moment:             M_w(t) = w^N <t>^w on (0,1)^N, 0 elsewhere
//
// plus custom:flat, a non-concentrating counterexample kernel (w-independent
// box profile) that fails the vanishing-far-mass axiom on purpose.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mellin_bv/quadrature.hpp"
#include "mellin_bv/rate_fit.hpp"

namespace mbv {

class KernelFamily {
 public:
  enum class Shape { gauss, laplace, moment, flat };

  static KernelFamily gauss_weierstrass(int dimension);
  static KernelFamily picard(int dimension);
  static KernelFamily moment(int dimension);
  static KernelFamily flat(int dimension);

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }
  bool nonnegative() const { return true; }  // all builtin families
  bool fejer() const { return fejer_; }      // K_w(t) = w^N K(t^w)

  double eval(double w, const double* t) const;     // K_w at a point of R^N_+
  double profile_eval(const double* t) const;       // K = K_1 for fejer families

  // integrands in log coordinates (bulk, vectorized); breakpoints and origin
  // flags are filled in so the quadrature engine hits full order
  LogIntegrand kernel_integrand(double w) const;                     // K_w(e^u)
  LogIntegrand abs_kernel_integrand(double w) const;                 // |K_w(e^u)|
  LogIntegrand weighted_abs_integrand(double w, double alpha) const; // |K_w||u|^alpha
  LogIntegrand profile_weighted_integrand(double alpha) const;       // |K||u|^alpha

  Shape shape() const { return shape_; }

 private:
  KernelFamily() = default;
  std::string name_;
  int dim_ = 1;
  bool fejer_ = true;
  Shape shape_ = Shape::gauss;
  double norm_ = 1.0;  // profile normalization constant
};

const KernelFamily& find_kernel(const std::string& name, int dimension);
std::vector<std::string> kernel_names();

// ---- axiom checks -----------------------------------------------------

struct KernelAxiomReport {
  std::vector<double> w_list;
  std::vector<double> delta_list;
  std::vector<double> l1_norm;                // per w
  std::vector<double> normalization_defect;   // |mass - 1| per w
  std::vector<std::vector<double>> far_mass;  // [delta index][w index]
  std::vector<std::int64_t> nodes_used;       // per w (mass integral)
  double bound_A = 0.0;                       // max L1 norm over the ladder
  bool unit_mass_pass = false;
  bool far_vanishing_pass = false;
  std::vector<std::string> notes;
};

// computed far masses below this are treated as underflow: strict-decrease
// checks allow ties once the previous value sits at or below it
inline constexpr double kFarMassFloor = 1e-14;
inline constexpr double kUnitMassTol = 1e-6;
inline constexpr double kFarFinalMax = 1e-3;

KernelAxiomReport check_axioms(const KernelFamily& k, const std::vector<double>& w_list,
                               const std::vector<double>& delta_list);

struct MomentResult {
  double value = 0.0;
  double tail_ratio = 0.0;  // |value(2R) - value(R)| / max(value, eps)
  bool divergence_suspected = false;
  std::int64_t nodes_used = 0;
};

// absolute moment of the profile: integral of |log t|^alpha |K(t)| d mu
MomentResult absolute_moment(const KernelFamily& k, double alpha);

// same computation for a caller-supplied weighted profile (already
// |K(e^u)| |u|^alpha in log coordinates); the divergence detector compares
// the box [-R, R]^N value against the doubled box
MomentResult absolute_moment_profile(const LogIntegrand& weighted_profile,
                                     double half_width = 40.0);

struct DecayCheck {
  double delta = 0.0;  // cutoff (or delta_tilde for the near condition)
  double alpha = 0.0;
  std::vector<double> w_list;
  std::vector<double> values;
  RateReport fit;            // over positive values, upper-half window
  bool underflow_pass = false;  // decayed below the floor: super-polynomial
  bool pass = false;
  std::string note;
};

// far mass decays like O(w^-alpha): fitted slope <= -alpha + slope_tol, or
// underflow past kFarMassFloor
DecayCheck check_alpha_singularity(const KernelFamily& k, double alpha,
                                   const std::vector<double>& w_list, double delta,
                                   double slope_tol = 0.25);

// near integral of |K_w| |log t|^alpha decays like O(w^-alpha)
DecayCheck check_near_moment_condition(const KernelFamily& k, double alpha,
                                       const std::vector<double>& w_list,
                                       double delta_tilde, double slope_tol = 0.25);

struct KernelCertification {
  double alpha = 0.0;
  std::vector<DecayCheck> singularity;  // one per delta
  DecayCheck near_moment;
  bool pass = false;
};

KernelCertification certify_kernel(const KernelFamily& k, double alpha,
                                   const std::vector<double>& w_list,
                                   const std::vector<double>& deltas,
                                   double delta_tilde, double slope_tol = 0.25);

}  // namespace mbv
