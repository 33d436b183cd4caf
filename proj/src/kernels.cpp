#include "mellin_bv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mellin_bv/errors.hpp"
#include "mellin_bv/simd.hpp"
#include "mellin_bv/special.hpp"

namespace mbv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOutsideSupport = 1e300;  // drives the vector exp to exact 0

double delta_extent(double delta) {
  return std::max(-std::log1p(-delta), std::log1p(delta));
}

// the flat kernel is w-independent, so scale-based box defaults do not apply
double base_half_width(const KernelFamily& k, double w) {
  const double r = default_half_width(w);
  return k.fejer() ? r : std::max(2.0, r);
}

double effective_w(const KernelFamily& k, double w) { return k.fejer() ? w : 1.0; }

LogDomainQuadrature quad_for(const KernelFamily& k, double w, double half_width) {
  const int nodes = default_nodes_per_axis(effective_w(k, w), half_width);
  return LogDomainQuadrature::make(k.dimension(), half_width, nodes);
}

}  // namespace

KernelFamily KernelFamily::gauss_weierstrass(int dimension) {
  KernelFamily k;
  k.name_ = "gauss_weierstrass";
  k.dim_ = dimension;
  k.shape_ = Shape::gauss;
  k.fejer_ = true;
  k.norm_ = std::pow(kPi, -0.5 * dimension);
  return k;
}

KernelFamily KernelFamily::picard(int dimension) {
  KernelFamily k;
  k.name_ = "picard";
  k.dim_ = dimension;
  k.shape_ = Shape::laplace;
  k.fejer_ = true;
  k.norm_ = gamma_fn(0.5 * dimension) /
            (2.0 * std::pow(kPi, 0.5 * dimension) * gamma_fn(dimension));
  return k;
}

KernelFamily KernelFamily::moment(int dimension) {
  KernelFamily k;
  k.name_ = "moment";
  k.dim_ = dimension;
  k.shape_ = Shape::moment;
  k.fejer_ = true;
  k.norm_ = 1.0;
  return k;
}

KernelFamily KernelFamily::flat(int dimension) {
  KernelFamily k;
  k.name_ = "custom:flat";
  k.dim_ = dimension;
  k.shape_ = Shape::flat;
  k.fejer_ = false;  // K_w does not concentrate as w grows
  k.norm_ = std::ldexp(1.0, -dimension);
  return k;
}

double KernelFamily::eval(double w, const double* t) const {
  if (!(w > 0.0)) throw std::invalid_argument("KernelFamily::eval: w must be > 0");
  double u[3];
  for (int j = 0; j < dim_; ++j) {
    if (!(t[j] > 0.0))
      throw std::invalid_argument("KernelFamily::eval: t must lie in R^N_+");
    u[j] = std::log(t[j]);
  }
  const double wn = std::pow(w, dim_);
  switch (shape_) {
    case Shape::gauss: {
      double r2 = 0.0;
      for (int j = 0; j < dim_; ++j) r2 += u[j] * u[j];
      return wn * norm_ * std::exp(-w * w * r2);
    }
    case Shape::laplace: {
      double r2 = 0.0;
      for (int j = 0; j < dim_; ++j) r2 += u[j] * u[j];
      const double r = dim_ == 1 ? std::fabs(u[0]) : std::sqrt(r2);
      return wn * norm_ * std::exp(-w * r);
    }
    case Shape::moment: {
      double s = 0.0;
      for (int j = 0; j < dim_; ++j) {
        if (u[j] >= 0.0) return 0.0;
        s += u[j];
      }
      return wn * std::exp(w * s);
    }
    case Shape::flat: {
      for (int j = 0; j < dim_; ++j)
        if (std::fabs(u[j]) > 1.0) return 0.0;
      return norm_;
    }
  }
  return 0.0;
}

double KernelFamily::profile_eval(const double* t) const { return eval(1.0, t); }

LogIntegrand KernelFamily::kernel_integrand(double w) const {
  if (!(w > 0.0))
    throw std::invalid_argument("kernel_integrand: w must be > 0");
  LogIntegrand g;
  g.dimension = dim_;
  const int n = dim_;
  const double norm = norm_;
  const double scale = std::pow(w, dim_) * (shape_ == Shape::moment ? 1.0 : norm);

  switch (shape_) {
    case Shape::gauss:
      if (n == 1) {
        g.eval_points = [w, scale](const double* u, std::size_t m, double* out) {
          simd::ops().gauss_map(u, out, m, w * w);
          for (std::size_t k = 0; k < m; ++k) out[k] *= scale;
        };
      } else {
        g.eval_points = [w, scale, n](const double* u, std::size_t m, double* out) {
          std::vector<double> r2(m);
          for (std::size_t k = 0; k < m; ++k) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
              const double v = u[k * static_cast<std::size_t>(n) +
                                 static_cast<std::size_t>(j)];
              s += v * v;
            }
            r2[k] = s;
          }
          simd::ops().decay_map(r2.data(), out, m, w * w);
          for (std::size_t k = 0; k < m; ++k) out[k] *= scale;
        };
      }
      break;
    case Shape::laplace:
      g.eval_points = [w, scale, n](const double* u, std::size_t m, double* out) {
        std::vector<double> r(m);
        if (n == 1) {
          for (std::size_t k = 0; k < m; ++k) r[k] = std::fabs(u[k]);
        } else {
          for (std::size_t k = 0; k < m; ++k) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
              const double v = u[k * static_cast<std::size_t>(n) +
                                 static_cast<std::size_t>(j)];
              s += v * v;
            }
            r[k] = std::sqrt(s);
          }
        }
        simd::ops().decay_map(r.data(), out, m, w);
        for (std::size_t k = 0; k < m; ++k) out[k] *= scale;
      };
      g.nonsmooth_at_origin = (n >= 2);
      break;
    case Shape::moment:
      g.eval_points = [w, scale, n](const double* u, std::size_t m, double* out) {
        std::vector<double> r(m);
        for (std::size_t k = 0; k < m; ++k) {
          double s = 0.0;
          bool inside = true;
          for (int j = 0; j < n; ++j) {
            const double v = u[k * static_cast<std::size_t>(n) +
                               static_cast<std::size_t>(j)];
            inside = inside && (v < 0.0);
            s += v;
          }
          r[k] = inside ? -s : kOutsideSupport;
        }
        simd::ops().decay_map(r.data(), out, m, w);
        for (std::size_t k = 0; k < m; ++k) out[k] *= scale;
      };
      g.axis_breakpoints.assign(static_cast<std::size_t>(n), {0.0});
      break;
    case Shape::flat:
      g.eval_points = [norm, n](const double* u, std::size_t m, double* out) {
        for (std::size_t k = 0; k < m; ++k) {
          bool inside = true;
          for (int j = 0; j < n; ++j)
            inside = inside &&
                     (std::fabs(u[k * static_cast<std::size_t>(n) +
                                  static_cast<std::size_t>(j)]) <= 1.0);
          out[k] = inside ? norm : 0.0;
        }
      };
      g.axis_breakpoints.assign(static_cast<std::size_t>(n), {-1.0, 1.0});
      break;
  }
  return g;
}

LogIntegrand KernelFamily::abs_kernel_integrand(double w) const {
  // every builtin family is nonnegative, so |K_w| = K_w
  return kernel_integrand(w);
}

LogIntegrand KernelFamily::weighted_abs_integrand(double w, double alpha) const {
  if (!(alpha >= 0.0))
    throw std::invalid_argument("weighted_abs_integrand: alpha must be >= 0");
  LogIntegrand base = abs_kernel_integrand(w);
  LogIntegrand g;
  g.dimension = dim_;
  g.axis_breakpoints = base.axis_breakpoints;
  const int n = dim_;
  g.eval_points = [base_eval = base.eval_points, alpha, n](const double* u,
                                                           std::size_t m,
                                                           double* out) {
    base_eval(u, m, out);
    for (std::size_t k = 0; k < m; ++k) {
      double r2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double v =
            u[k * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
        r2 += v * v;
      }
      const double r = std::sqrt(r2);
      double f;
      if (alpha == 1.0)
        f = r;
      else if (alpha == 2.0)
        f = r * r;
      else
        f = std::pow(r, alpha);
      out[k] *= f;
    }
  };
  // |u|^alpha is analytic away from the origin only; the radial factor (and
  // the laplace profile for N >= 2) needs geometric refinement toward u = 0
  g.nonsmooth_at_origin = base.nonsmooth_at_origin || n >= 2 ||
                          alpha != std::floor(alpha);
  return g;
}

LogIntegrand KernelFamily::profile_weighted_integrand(double alpha) const {
  return weighted_abs_integrand(1.0, alpha);
}

const KernelFamily& find_kernel(const std::string& name, int dimension) {
  if (dimension < 1 || dimension > 3)
    throw UnknownDimension("find_kernel: dimension " + std::to_string(dimension) +
                           " unsupported (1..3)");
  static const KernelFamily table[3][4] = {
      {KernelFamily::gauss_weierstrass(1), KernelFamily::picard(1),
       KernelFamily::moment(1), KernelFamily::flat(1)},
      {KernelFamily::gauss_weierstrass(2), KernelFamily::picard(2),
       KernelFamily::moment(2), KernelFamily::flat(2)},
      {KernelFamily::gauss_weierstrass(3), KernelFamily::picard(3),
       KernelFamily::moment(3), KernelFamily::flat(3)},
  };
  for (const auto& k : table[dimension - 1])
    if (k.name() == name) return k;
  std::string msg = "unknown kernel '" + name + "'; available:";
  for (const auto& k : table[dimension - 1]) msg += " " + k.name();
  throw std::invalid_argument(msg);
}

std::vector<std::string> kernel_names() {
  return {"gauss_weierstrass", "picard", "moment", "custom:flat"};
}

KernelAxiomReport check_axioms(const KernelFamily& k, const std::vector<double>& w_list,
                               const std::vector<double>& delta_list) {
  if (w_list.empty()) throw std::invalid_argument("check_axioms: empty w list");
  KernelAxiomReport rep;
  rep.w_list = w_list;
  rep.delta_list = delta_list;
  rep.far_mass.assign(delta_list.size(), std::vector<double>(w_list.size(), 0.0));

  for (std::size_t i = 0; i < w_list.size(); ++i) {
    const double w = w_list[i];
    const double r = base_half_width(k, w);
    const auto q = quad_for(k, w, r);
    const auto mass = integrate_haar(k.kernel_integrand(w), q);
    rep.normalization_defect.push_back(std::fabs(mass.value - 1.0));
    // builtin kernels are nonnegative, so the L1 norm equals the mass
    rep.l1_norm.push_back(std::fabs(mass.value));
    rep.nodes_used.push_back(mass.nodes_used);

    for (std::size_t d = 0; d < delta_list.size(); ++d) {
      const double delta = delta_list[d];
      const double rr = base_half_width(k, w) + delta_extent(delta);
      const auto qr = quad_for(k, w, rr);
      rep.far_mass[d][i] =
          integrate_haar_region(k.abs_kernel_integrand(w), qr, Region::far, delta)
              .value;
    }
  }

  rep.bound_A = *std::max_element(rep.l1_norm.begin(), rep.l1_norm.end());
  rep.unit_mass_pass = true;
  for (double d : rep.normalization_defect)
    if (!(d < kUnitMassTol)) rep.unit_mass_pass = false;
  if (!rep.unit_mass_pass) rep.notes.push_back("unit-mass defect above tolerance");

  rep.far_vanishing_pass = true;
  for (std::size_t d = 0; d < delta_list.size(); ++d) {
    const auto& fm = rep.far_mass[d];
    for (std::size_t i = 1; i < fm.size(); ++i) {
      const bool both_floor = fm[i - 1] <= kFarMassFloor && fm[i] <= kFarMassFloor;
      if (!(fm[i] < fm[i - 1] || both_floor)) {
        rep.far_vanishing_pass = false;
        rep.notes.push_back("far mass not decreasing at delta index " +
                            std::to_string(d));
        break;
      }
    }
    if (!(fm.back() < kFarFinalMax)) {
      rep.far_vanishing_pass = false;
      rep.notes.push_back("far mass above final threshold at delta index " +
                          std::to_string(d));
    }
  }
  return rep;
}

MomentResult absolute_moment_profile(const LogIntegrand& weighted_profile,
                                     double half_width) {
  MomentResult res;
  const int n = weighted_profile.dimension;
  const auto q1 = LogDomainQuadrature::make(
      n, half_width, default_nodes_per_axis(1.0, half_width));
  const auto q2 = LogDomainQuadrature::make(
      n, 2.0 * half_width, default_nodes_per_axis(1.0, 2.0 * half_width));
  const auto a = integrate_haar(weighted_profile, q1);
  const auto b = integrate_haar(weighted_profile, q2);
  res.value = b.value;
  res.nodes_used = a.nodes_used + b.nodes_used;
  res.tail_ratio = std::fabs(b.value - a.value) / std::max(std::fabs(b.value), 1e-300);
  res.divergence_suspected = res.tail_ratio > 1e-6;
  return res;
}

MomentResult absolute_moment(const KernelFamily& k, double alpha) {
  return absolute_moment_profile(k.profile_weighted_integrand(alpha),
                                 base_half_width(k, 1.0));
}

namespace {

DecayCheck run_decay_check(std::vector<double> values, double alpha,
                           const std::vector<double>& w_list, double cutoff,
                           double slope_tol, const char* what) {
  DecayCheck chk;
  chk.delta = cutoff;
  chk.alpha = alpha;
  chk.w_list = w_list;
  chk.values = std::move(values);
  chk.underflow_pass = chk.values.back() <= kFarMassFloor;

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < w_list.size(); ++i)
    pts.emplace_back(w_list[i], chk.values[i] > kFarMassFloor ? chk.values[i] : 0.0);
  const FitWindow win = upper_half_window(pts.size());
  bool fitted = false;
  try {
    const FitResult fit = fit_loglog(pts, win);
    chk.fit = make_rate_report(fit, win, alpha, slope_tol);
    fitted = true;
  } catch (const InsufficientData&) {
    if (!chk.underflow_pass) throw;
  }
  if (chk.underflow_pass) {
    chk.pass = true;
    chk.note = std::string(what) + ": super-polynomial decay (tail below the underflow floor)";
  } else {
    chk.pass = fitted && chk.fit.pass;
    chk.note = std::string(what) + (chk.pass ? ": fitted slope within tolerance"
                                             : ": fitted slope too shallow");
  }
  return chk;
}

}  // namespace

DecayCheck check_alpha_singularity(const KernelFamily& k, double alpha,
                                   const std::vector<double>& w_list, double delta,
                                   double slope_tol) {
  if (w_list.size() < 2)
    throw std::invalid_argument("check_alpha_singularity: need at least 2 w values");
  std::vector<double> values;
  for (double w : w_list) {
    const double rr = base_half_width(k, w) + delta_extent(delta);
    const auto qr = quad_for(k, w, rr);
    values.push_back(
        integrate_haar_region(k.abs_kernel_integrand(w), qr, Region::far, delta)
            .value);
  }
  return run_decay_check(std::move(values), alpha, w_list, delta, slope_tol,
                         "far mass");
}

DecayCheck check_near_moment_condition(const KernelFamily& k, double alpha,
                                       const std::vector<double>& w_list,
                                       double delta_tilde, double slope_tol) {
  if (w_list.size() < 2)
    throw std::invalid_argument("check_near_moment_condition: need at least 2 w values");
  std::vector<double> values;
  for (double w : w_list) {
    const double rr = base_half_width(k, w) + delta_extent(delta_tilde);
    const auto qr = quad_for(k, w, rr);
    values.push_back(integrate_haar_region(k.weighted_abs_integrand(w, alpha), qr,
                                           Region::near, delta_tilde)
                         .value);
  }
  return run_decay_check(std::move(values), alpha, w_list, delta_tilde, slope_tol,
                         "near weighted integral");
}

KernelCertification certify_kernel(const KernelFamily& k, double alpha,
                                   const std::vector<double>& w_list,
                                   const std::vector<double>& deltas,
                                   double delta_tilde, double slope_tol) {
  KernelCertification cert;
  cert.alpha = alpha;
  cert.pass = true;
  for (double d : deltas) {
    cert.singularity.push_back(check_alpha_singularity(k, alpha, w_list, d, slope_tol));
    cert.pass = cert.pass && cert.singularity.back().pass;
  }
  cert.near_moment =
      check_near_moment_condition(k, alpha, w_list, delta_tilde, slope_tol);
  cert.pass = cert.pass && cert.near_moment.pass;
  return cert;
}

}  // namespace mbv
