#include "mellin_bv/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mbv {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) return x;
  if (x == 0.0 || (x < 0.0 && x == std::floor(x)))
    return std::numeric_limits<double>::infinity();
  if (x < 0.5) {
    // reflection: gamma(x) = pi / (sin(pi x) gamma(1 - x))
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double s = kLanczos[0];
  for (int i = 1; i < 9; ++i) s += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * s;
}

}  // namespace mbv
