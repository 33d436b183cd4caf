#pragma once

// Reference 4-lane vector: plain doubles, one IEEE operation per lane.
// The AVX2/NEON types mirror this interface exactly; the shared kernel
// bodies in simd_kernels.inl are instantiated against each of them.

#include <cmath>
#include <cstdint>
#include <cstring>

namespace mbv::simd::detail {

struct VecScalar {
  double v[4];

  static VecScalar broadcast(double x) { return {x, x, x, x}; }
  static VecScalar load(const double* p) { return {p[0], p[1], p[2], p[3]}; }
  void store(double* p) const {
    p[0] = v[0];
    p[1] = v[1];
    p[2] = v[2];
    p[3] = v[3];
  }

  friend VecScalar operator+(VecScalar a, VecScalar b) {
    return {a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2], a.v[3] + b.v[3]};
  }
  friend VecScalar operator-(VecScalar a, VecScalar b) {
    return {a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2], a.v[3] - b.v[3]};
  }
  friend VecScalar operator*(VecScalar a, VecScalar b) {
    return {a.v[0] * b.v[0], a.v[1] * b.v[1], a.v[2] * b.v[2], a.v[3] * b.v[3]};
  }
  friend VecScalar operator/(VecScalar a, VecScalar b) {
    return {a.v[0] / b.v[0], a.v[1] / b.v[1], a.v[2] / b.v[2], a.v[3] / b.v[3]};
  }

  static VecScalar fma(VecScalar a, VecScalar b, VecScalar c) {
    return {std::fma(a.v[0], b.v[0], c.v[0]), std::fma(a.v[1], b.v[1], c.v[1]),
            std::fma(a.v[2], b.v[2], c.v[2]), std::fma(a.v[3], b.v[3], c.v[3])};
  }

  // (a > b) ? a : b, matching the x86 max instruction on non-NaN input
  static VecScalar max(VecScalar a, VecScalar b) {
    return {a.v[0] > b.v[0] ? a.v[0] : b.v[0], a.v[1] > b.v[1] ? a.v[1] : b.v[1],
            a.v[2] > b.v[2] ? a.v[2] : b.v[2], a.v[3] > b.v[3] ? a.v[3] : b.v[3]};
  }
  static VecScalar min(VecScalar a, VecScalar b) {
    return {a.v[0] < b.v[0] ? a.v[0] : b.v[0], a.v[1] < b.v[1] ? a.v[1] : b.v[1],
            a.v[2] < b.v[2] ? a.v[2] : b.v[2], a.v[3] < b.v[3] ? a.v[3] : b.v[3]};
  }
  static VecScalar abs(VecScalar a) {
    return {std::fabs(a.v[0]), std::fabs(a.v[1]), std::fabs(a.v[2]), std::fabs(a.v[3])};
  }
  static VecScalar floor(VecScalar a) {
    return {std::floor(a.v[0]), std::floor(a.v[1]), std::floor(a.v[2]), std::floor(a.v[3])};
  }

  static VecScalar select_gt(VecScalar x, VecScalar bound, VecScalar a, VecScalar b) {
    VecScalar r;
    for (int i = 0; i < 4; ++i) r.v[i] = x.v[i] > bound.v[i] ? a.v[i] : b.v[i];
    return r;
  }
  static VecScalar select_lt(VecScalar x, VecScalar bound, VecScalar a, VecScalar b) {
    VecScalar r;
    for (int i = 0; i < 4; ++i) r.v[i] = x.v[i] < bound.v[i] ? a.v[i] : b.v[i];
    return r;
  }
  static VecScalar select_nan(VecScalar x, VecScalar a, VecScalar b) {
    VecScalar r;
    for (int i = 0; i < 4; ++i) r.v[i] = x.v[i] != x.v[i] ? a.v[i] : b.v[i];
    return r;
  }

  // y * 2^k via exponent-field arithmetic; k integer-valued, |k| <= 1100,
  // valid when y and the result are normal (guaranteed by the exp clamps)
  static VecScalar scale_by_pow2(VecScalar y, VecScalar k) {
    VecScalar r;
    for (int i = 0; i < 4; ++i) {
      std::int64_t bits;
      std::memcpy(&bits, &y.v[i], sizeof bits);
      bits += static_cast<std::int64_t>(static_cast<std::int32_t>(k.v[i])) << 52;
      std::memcpy(&r.v[i], &bits, sizeof bits);
    }
    return r;
  }
};

}  // namespace mbv::simd::detail
