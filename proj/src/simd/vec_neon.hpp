#pragma once

// NEON twin of VecScalar: four lanes as a pair of float64x2_t.
// aarch64 only; float64x2 intrinsics require it.

#include <arm_neon.h>

namespace mbv::simd::detail {

struct VecNeon {
  float64x2_t lo, hi;

  static VecNeon broadcast(double x) { return {vdupq_n_f64(x), vdupq_n_f64(x)}; }
  static VecNeon load(const double* p) { return {vld1q_f64(p), vld1q_f64(p + 2)}; }
  void store(double* p) const {
    vst1q_f64(p, lo);
    vst1q_f64(p + 2, hi);
  }

  friend VecNeon operator+(VecNeon a, VecNeon b) {
    return {vaddq_f64(a.lo, b.lo), vaddq_f64(a.hi, b.hi)};
  }
  friend VecNeon operator-(VecNeon a, VecNeon b) {
    return {vsubq_f64(a.lo, b.lo), vsubq_f64(a.hi, b.hi)};
  }
  friend VecNeon operator*(VecNeon a, VecNeon b) {
    return {vmulq_f64(a.lo, b.lo), vmulq_f64(a.hi, b.hi)};
  }
  friend VecNeon operator/(VecNeon a, VecNeon b) {
    return {vdivq_f64(a.lo, b.lo), vdivq_f64(a.hi, b.hi)};
  }

  static VecNeon fma(VecNeon a, VecNeon b, VecNeon c) {
    return {vfmaq_f64(c.lo, a.lo, b.lo), vfmaq_f64(c.hi, a.hi, b.hi)};
  }

  // ties resolved like the scalar ternary: (a > b) ? a : b
  static VecNeon max(VecNeon a, VecNeon b) {
    uint64x2_t mlo = vcgtq_f64(a.lo, b.lo);
    uint64x2_t mhi = vcgtq_f64(a.hi, b.hi);
    return {vbslq_f64(mlo, a.lo, b.lo), vbslq_f64(mhi, a.hi, b.hi)};
  }
  static VecNeon min(VecNeon a, VecNeon b) {
    uint64x2_t mlo = vcltq_f64(a.lo, b.lo);
    uint64x2_t mhi = vcltq_f64(a.hi, b.hi);
    return {vbslq_f64(mlo, a.lo, b.lo), vbslq_f64(mhi, a.hi, b.hi)};
  }
  static VecNeon abs(VecNeon a) { return {vabsq_f64(a.lo), vabsq_f64(a.hi)}; }
  static VecNeon floor(VecNeon a) { return {vrndmq_f64(a.lo), vrndmq_f64(a.hi)}; }

  static VecNeon select_gt(VecNeon x, VecNeon bound, VecNeon a, VecNeon b) {
    uint64x2_t mlo = vcgtq_f64(x.lo, bound.lo);
    uint64x2_t mhi = vcgtq_f64(x.hi, bound.hi);
    return {vbslq_f64(mlo, a.lo, b.lo), vbslq_f64(mhi, a.hi, b.hi)};
  }
  static VecNeon select_lt(VecNeon x, VecNeon bound, VecNeon a, VecNeon b) {
    uint64x2_t mlo = vcltq_f64(x.lo, bound.lo);
    uint64x2_t mhi = vcltq_f64(x.hi, bound.hi);
    return {vbslq_f64(mlo, a.lo, b.lo), vbslq_f64(mhi, a.hi, b.hi)};
  }
  static VecNeon select_nan(VecNeon x, VecNeon a, VecNeon b) {
    // unordered <=> !(x == x)
    uint64x2_t olo = vceqq_f64(x.lo, x.lo);
    uint64x2_t ohi = vceqq_f64(x.hi, x.hi);
    return {vbslq_f64(olo, b.lo, a.lo), vbslq_f64(ohi, b.hi, a.hi)};
  }

  static VecNeon scale_by_pow2(VecNeon y, VecNeon k) {
    int64x2_t klo = vcvtq_s64_f64(k.lo);
    int64x2_t khi = vcvtq_s64_f64(k.hi);
    int64x2_t blo = vaddq_s64(vreinterpretq_s64_f64(y.lo), vshlq_n_s64(klo, 52));
    int64x2_t bhi = vaddq_s64(vreinterpretq_s64_f64(y.hi), vshlq_n_s64(khi, 52));
    return {vreinterpretq_f64_s64(blo), vreinterpretq_f64_s64(bhi)};
  }
};

}  // namespace mbv::simd::detail
