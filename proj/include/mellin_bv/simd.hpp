#pragma once

// Data-parallel arithmetic core. Every operation exists as a scalar reference
// implementation and (where the platform allows) AVX2 / NEON variants generated
// from the same templated kernel bodies. All variants are bit-identical: same
// IEEE operation sequence per element, same fixed 4-lane striped reduction
// order, same hand-rolled exp. Tests assert exact equality across paths.
//
// Path selection happens once, at first use: AVX2 when the CPU reports
// avx2+fma, NEON on aarch64, scalar otherwise. MELLIN_BV_SIMD=scalar|avx2|neon
// overrides (an unavailable choice falls back to scalar).

#include <cstddef>
#include <string>

namespace mbv::simd {

enum class Path { scalar, avx2, neon };

const char* path_name(Path p);

struct Ops {
  Path path;

  // x[i] = exp(x[i]); ~1 ulp vs a correctly rounded exp, clamped to 0 below
  // -708 and to +inf above 708 (no subnormal results).
  void (*exp_inplace)(double* x, std::size_t n);

  // out[i] = exp(-c * u[i]^2)
  void (*gauss_map)(const double* u, double* out, std::size_t n, double c);

  // out[i] = exp(-c * r[i]); r >= 0 expected but not required
  void (*decay_map)(const double* r, double* out, std::size_t n, double c);

  // sum_i a[i] * b[i], fixed striped order (4 accumulator lanes, scalar tail)
  double (*dot)(const double* a, const double* b, std::size_t n);

  // sum_i a[i], same reduction scheme as dot
  double (*sum)(const double* a, std::size_t n);

  // sum_i |v[i+1] - v[i]|^p for p in {1, 2} (fast lanes); other p via the
  // shared scalar fallback so results stay path-independent
  double (*tv_pow_sum)(const double* v, std::size_t n, double p);

  // max_i (best[i] + |vj - v[i]|^p), the relaxation step of the variation DP.
  // No fma anywhere in this op: the exhaustive oracle accumulates with plain
  // mul/add and the two must agree bit-for-bit. n >= 1 required.
  double (*dp_relax)(const double* best, const double* v, std::size_t n,
                     double vj, double p);
};

bool available(Path p);
Path active_path();            // resolved once per process
const Ops& ops();              // ops table for the active path
const Ops& ops(Path p);        // throws std::invalid_argument if unavailable

}  // namespace mbv::simd
