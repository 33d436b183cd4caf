#pragma once

// Shared kernel bodies, templated on the 4-lane vector type. Each backend TU
// instantiates make_ops<Vec> once. Keeping a single source for every path is
// what makes the cross-path bit-identity tests meaningful: the operation
// sequence per element is fixed here, the vector type only changes which
// instructions carry it out.
//
// Reduction convention (all paths, all reductions): four striped accumulator
// lanes over the aligned prefix, folded as (l0+l1)+(l2+l3) (or the max
// analogue), then a sequential scalar tail in index order.

#include <cmath>
#include <cstddef>
#include <limits>

#include "mellin_bv/simd.hpp"

namespace mbv::simd::detail {

// exp constants (Cody-Waite split of ln 2, Cephes rational coefficients)
inline constexpr double kLog2e = 1.4426950408889634073599;
inline constexpr double kExpC1 = 6.93145751953125e-1;
inline constexpr double kExpC2 = 1.42860682030941723212e-6;
inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;
inline constexpr double kExpLo = -708.0;  // below: exp == 0 (result would leave normals)
inline constexpr double kExpHi = 708.0;   // above: exp == +inf

template <class V>
inline V exp_core(V x) {
  const V half = V::broadcast(0.5);
  V k = V::floor(V::fma(x, V::broadcast(kLog2e), half));
  // keep the int conversion in scale_by_pow2 defined even for wild inputs;
  // those lanes are overwritten by the clamps below
  k = V::min(V::max(k, V::broadcast(-1100.0)), V::broadcast(1100.0));
  V r = V::fma(k, V::broadcast(-kExpC1), x);
  r = V::fma(k, V::broadcast(-kExpC2), r);
  V r2 = r * r;
  V px = V::fma(V::fma(V::broadcast(kExpP0), r2, V::broadcast(kExpP1)), r2,
                V::broadcast(kExpP2)) *
         r;
  V qx = V::fma(V::fma(V::fma(V::broadcast(kExpQ0), r2, V::broadcast(kExpQ1)), r2,
                       V::broadcast(kExpQ2)),
                r2, V::broadcast(kExpQ3));
  V e = px / (qx - px);
  V y = V::fma(V::broadcast(2.0), e, V::broadcast(1.0));
  y = V::scale_by_pow2(y, k);
  y = V::select_gt(x, V::broadcast(kExpHi),
                   V::broadcast(std::numeric_limits<double>::infinity()), y);
  y = V::select_lt(x, V::broadcast(kExpLo), V::broadcast(0.0), y);
  return V::select_nan(x, x, y);
}

template <class V>
void exp_inplace_impl(double* x, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    V y = exp_core(V::load(x + i));
    y.store(x + i);
  }
  if (n4 < n) {
    double buf[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = n4; i < n; ++i) buf[i - n4] = x[i];
    V y = exp_core(V::load(buf));
    y.store(buf);
    for (std::size_t i = n4; i < n; ++i) x[i] = buf[i - n4];
  }
}

template <class V>
void gauss_map_impl(const double* u, double* out, std::size_t n, double c) {
  const V nc = V::broadcast(-c);
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    V x = V::load(u + i);
    V y = exp_core(nc * (x * x));
    y.store(out + i);
  }
  if (n4 < n) {
    double buf[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = n4; i < n; ++i) buf[i - n4] = u[i];
    V x = V::load(buf);
    V y = exp_core(nc * (x * x));
    y.store(buf);
    for (std::size_t i = n4; i < n; ++i) out[i] = buf[i - n4];
  }
}

template <class V>
void decay_map_impl(const double* r, double* out, std::size_t n, double c) {
  const V nc = V::broadcast(-c);
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    V y = exp_core(nc * V::load(r + i));
    y.store(out + i);
  }
  if (n4 < n) {
    double buf[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = n4; i < n; ++i) buf[i - n4] = r[i];
    V y = exp_core(nc * V::load(buf));
    y.store(buf);
    for (std::size_t i = n4; i < n; ++i) out[i] = buf[i - n4];
  }
}

template <class V>
double dot_impl(const double* a, const double* b, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t(3);
  V acc = V::broadcast(0.0);
  for (std::size_t i = 0; i < n4; i += 4)
    acc = V::fma(V::load(a + i), V::load(b + i), acc);
  double l[4];
  acc.store(l);
  double total = (l[0] + l[1]) + (l[2] + l[3]);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * b[i];
  return total;
}

template <class V>
double sum_impl(const double* a, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t(3);
  V acc = V::broadcast(0.0);
  for (std::size_t i = 0; i < n4; i += 4) acc = acc + V::load(a + i);
  double l[4];
  acc.store(l);
  double total = (l[0] + l[1]) + (l[2] + l[3]);
  for (std::size_t i = n4; i < n; ++i) total += a[i];
  return total;
}

template <class V>
double tv_pow_sum_impl(const double* v, std::size_t n, double p) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;
  const std::size_t m4 = m & ~std::size_t(3);
  if (p == 2.0) {
    V acc = V::broadcast(0.0);
    for (std::size_t i = 0; i < m4; i += 4) {
      V d = V::load(v + i + 1) - V::load(v + i);
      acc = acc + d * d;
    }
    double l[4];
    acc.store(l);
    double total = (l[0] + l[1]) + (l[2] + l[3]);
    for (std::size_t i = m4; i < m; ++i) {
      double d = v[i + 1] - v[i];
      total += d * d;
    }
    return total;
  }
  if (p == 1.0) {
    V acc = V::broadcast(0.0);
    for (std::size_t i = 0; i < m4; i += 4) {
      V d = V::load(v + i + 1) - V::load(v + i);
      acc = acc + V::abs(d);
    }
    double l[4];
    acc.store(l);
    double total = (l[0] + l[1]) + (l[2] + l[3]);
    for (std::size_t i = m4; i < m; ++i) total += std::fabs(v[i + 1] - v[i]);
    return total;
  }
  // general exponent: identical plain-scalar code in every backend
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += std::pow(std::fabs(v[i + 1] - v[i]), p);
  return total;
}

template <class V>
double dp_relax_impl(const double* best, const double* v, std::size_t n, double vj,
                     double p) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const std::size_t n4 = n & ~std::size_t(3);
  if (p == 2.0) {
    V acc = V::broadcast(neg_inf);
    const V vjv = V::broadcast(vj);
    for (std::size_t i = 0; i < n4; i += 4) {
      V d = vjv - V::load(v + i);
      acc = V::max(acc, V::load(best + i) + d * d);
    }
    double l[4];
    acc.store(l);
    double m01 = l[0] > l[1] ? l[0] : l[1];
    double m23 = l[2] > l[3] ? l[2] : l[3];
    double m = m01 > m23 ? m01 : m23;
    for (std::size_t i = n4; i < n; ++i) {
      double d = vj - v[i];
      double c = best[i] + d * d;
      m = m > c ? m : c;
    }
    return m;
  }
  if (p == 1.0) {
    V acc = V::broadcast(neg_inf);
    const V vjv = V::broadcast(vj);
    for (std::size_t i = 0; i < n4; i += 4) {
      V d = V::abs(vjv - V::load(v + i));
      acc = V::max(acc, V::load(best + i) + d);
    }
    double l[4];
    acc.store(l);
    double m01 = l[0] > l[1] ? l[0] : l[1];
    double m23 = l[2] > l[3] ? l[2] : l[3];
    double m = m01 > m23 ? m01 : m23;
    for (std::size_t i = n4; i < n; ++i) {
      double c = best[i] + std::fabs(vj - v[i]);
      m = m > c ? m : c;
    }
    return m;
  }
  double m = neg_inf;
  for (std::size_t i = 0; i < n; ++i) {
    double c = best[i] + std::pow(std::fabs(vj - v[i]), p);
    m = m > c ? m : c;
  }
  return m;
}

template <class V>
Ops make_ops(Path path) {
  return Ops{path,
             &exp_inplace_impl<V>,
             &gauss_map_impl<V>,
             &decay_map_impl<V>,
             &dot_impl<V>,
             &sum_impl<V>,
             &tv_pow_sum_impl<V>,
             &dp_relax_impl<V>};
}

}  // namespace mbv::simd::detail
