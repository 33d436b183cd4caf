#pragma once

// Axis-aligned boxes in R^N_+ with strictly positive, nondegenerate sides.

#include <array>
#include <stdexcept>
#include <vector>

namespace mbv {

struct Box {
  std::vector<std::array<double, 2>> intervals;  // {a_i, b_i}, 0 < a_i < b_i

  int dimension() const { return static_cast<int>(intervals.size()); }

  static Box make(std::vector<std::array<double, 2>> iv) {
    for (const auto& ab : iv)
      if (!(ab[0] > 0.0) || !(ab[1] > ab[0]) || !(ab[1] < 1e300))
        throw std::invalid_argument("Box: intervals must satisfy 0 < a < b < inf");
    Box b;
    b.intervals = std::move(iv);
    return b;
  }

  static Box cube(double lo, double hi, int n) {
    std::vector<std::array<double, 2>> iv(static_cast<std::size_t>(n), {lo, hi});
    return make(std::move(iv));
  }
};

}  // namespace mbv
