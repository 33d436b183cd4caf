#pragma once

// Test-function registry. Each function carries regularity tags, its jump and
// kink locations per axis (consumed by quadrature panel construction and by
// variation grids), and, where a closed form exists, its exact phi-variation.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mellin_bv/box.hpp"
#include "mellin_bv/phi.hpp"

namespace mbv {

struct RegularityTags {
  bool bv_phi = false;   // finite phi-variation on every box (some scaling)
  bool ac_phi = false;   // phi-absolutely continuous (Tonelli sense)
  bool bounded = false;
  std::optional<double> lip_alpha;  // increment variation O(|log t|^alpha)
};

class TestFunction {
 public:
  using Eval = std::function<double(const double* x)>;
  // exact V^phi[lambda f] over a box (nullptr = whole space); nullopt = unknown
  using ExactVariation = std::function<std::optional<double>(
      const PhiFunction&, double lambda, const Box* box)>;

  TestFunction(std::string name, int dimension, Eval eval, RegularityTags tags);

  double operator()(const double* x) const { return eval_(x); }
  double eval1(double x) const { return eval_(&x); }

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }
  const RegularityTags& tags() const { return tags_; }

  // x-space locations of discontinuities / derivative breaks, per axis
  const std::vector<std::vector<double>>& jumps() const { return jumps_; }
  const std::vector<std::vector<double>>& kinks() const { return kinks_; }

  std::optional<double> exact_variation(const PhiFunction& phi, double lambda,
                                        const Box* box = nullptr) const;

  TestFunction& with_jumps(std::vector<std::vector<double>> j);
  TestFunction& with_kinks(std::vector<std::vector<double>> k);
  TestFunction& with_exact_variation(ExactVariation ev);

 private:
  std::string name_;
  int dim_;
  Eval eval_;
  RegularityTags tags_;
  std::vector<std::vector<double>> jumps_;
  std::vector<std::vector<double>> kinks_;
  ExactVariation exact_;
};

// homothetic translate: (translate(f, t))(s) = f(st); feature locations move
// to c / t_j and all tags are preserved
TestFunction translate(const TestFunction& f, const std::vector<double>& t);

// multiplicative increment: tau_t f - f; features are the union of shifted
// and original ones; only boundedness survives in the tags
TestFunction increment(const TestFunction& f, const std::vector<double>& t);

// pointwise sum (same dimension); used by linearity checks
TestFunction sum_of(const TestFunction& a, const TestFunction& b);
// constant multiple c * f (exact variation rescales)
TestFunction scale_of(const TestFunction& f, double c);

const std::vector<TestFunction>& builtin_registry(int dimension);  // N = 1..3
const TestFunction& find_function(const std::string& name, int dimension);
std::vector<std::string> builtin_names(int dimension);

}  // namespace mbv
