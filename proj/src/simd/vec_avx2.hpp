#pragma once

// AVX2 lane-for-lane twin of VecScalar. Compile the including TU with
// -mavx2 -mfma; callers must gate on runtime CPU support.

#include <immintrin.h>

namespace mbv::simd::detail {

struct VecAvx2 {
  __m256d v;

  static VecAvx2 broadcast(double x) { return {_mm256_set1_pd(x)}; }
  static VecAvx2 load(const double* p) { return {_mm256_loadu_pd(p)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }

  friend VecAvx2 operator+(VecAvx2 a, VecAvx2 b) { return {_mm256_add_pd(a.v, b.v)}; }
  friend VecAvx2 operator-(VecAvx2 a, VecAvx2 b) { return {_mm256_sub_pd(a.v, b.v)}; }
  friend VecAvx2 operator*(VecAvx2 a, VecAvx2 b) { return {_mm256_mul_pd(a.v, b.v)}; }
  friend VecAvx2 operator/(VecAvx2 a, VecAvx2 b) { return {_mm256_div_pd(a.v, b.v)}; }

  static VecAvx2 fma(VecAvx2 a, VecAvx2 b, VecAvx2 c) {
    return {_mm256_fmadd_pd(a.v, b.v, c.v)};
  }

  // vmaxpd/vminpd pick the second operand on ties, same as the scalar ternary
  static VecAvx2 max(VecAvx2 a, VecAvx2 b) { return {_mm256_max_pd(a.v, b.v)}; }
  static VecAvx2 min(VecAvx2 a, VecAvx2 b) { return {_mm256_min_pd(a.v, b.v)}; }
  static VecAvx2 abs(VecAvx2 a) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return {_mm256_and_pd(a.v, mask)};
  }
  static VecAvx2 floor(VecAvx2 a) { return {_mm256_floor_pd(a.v)}; }

  static VecAvx2 select_gt(VecAvx2 x, VecAvx2 bound, VecAvx2 a, VecAvx2 b) {
    __m256d m = _mm256_cmp_pd(x.v, bound.v, _CMP_GT_OQ);
    return {_mm256_blendv_pd(b.v, a.v, m)};
  }
  static VecAvx2 select_lt(VecAvx2 x, VecAvx2 bound, VecAvx2 a, VecAvx2 b) {
    __m256d m = _mm256_cmp_pd(x.v, bound.v, _CMP_LT_OQ);
    return {_mm256_blendv_pd(b.v, a.v, m)};
  }
  static VecAvx2 select_nan(VecAvx2 x, VecAvx2 a, VecAvx2 b) {
    __m256d m = _mm256_cmp_pd(x.v, x.v, _CMP_UNORD_Q);
    return {_mm256_blendv_pd(b.v, a.v, m)};
  }

  static VecAvx2 scale_by_pow2(VecAvx2 y, VecAvx2 k) {
    __m128i k32 = _mm256_cvtpd_epi32(k.v);
    __m256i k64 = _mm256_cvtepi32_epi64(k32);
    __m256i bits = _mm256_add_epi64(_mm256_castpd_si256(y.v), _mm256_slli_epi64(k64, 52));
    return {_mm256_castsi256_pd(bits)};
  }
};

}  // namespace mbv::simd::detail
