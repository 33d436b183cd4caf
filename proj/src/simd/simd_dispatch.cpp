#include "mellin_bv/simd.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mbv::simd {
namespace detail {

Ops make_scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
Ops make_avx2_ops();
#endif
#if defined(__aarch64__)
Ops make_neon_ops();
#endif

}  // namespace detail

const char* path_name(Path p) {
  switch (p) {
    case Path::scalar: return "scalar";
    case Path::avx2: return "avx2";
    case Path::neon: return "neon";
  }
  return "?";
}

bool available(Path p) {
  switch (p) {
    case Path::scalar:
      return true;
    case Path::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Path::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Path resolve_path() {
  if (const char* env = std::getenv("MELLIN_BV_SIMD")) {
    std::string s(env);
    if (s == "scalar") return Path::scalar;
    if (s == "avx2" && available(Path::avx2)) return Path::avx2;
    if (s == "neon" && available(Path::neon)) return Path::neon;
    if (s != "auto" && s != "avx2" && s != "neon" && !s.empty()) return Path::scalar;
    // fall through: "auto", or an unavailable explicit choice
  }
  if (available(Path::avx2)) return Path::avx2;
  if (available(Path::neon)) return Path::neon;
  return Path::scalar;
}

}  // namespace

Path active_path() {
  static const Path p = resolve_path();
  return p;
}

const Ops& ops(Path p) {
  if (!available(p))
    throw std::invalid_argument(std::string("simd path unavailable: ") + path_name(p));
  switch (p) {
    case Path::scalar: {
      static const Ops t = detail::make_scalar_ops();
      return t;
    }
#if defined(__x86_64__) || defined(_M_X64)
    case Path::avx2: {
      static const Ops t = detail::make_avx2_ops();
      return t;
    }
#endif
#if defined(__aarch64__)
    case Path::neon: {
      static const Ops t = detail::make_neon_ops();
      return t;
    }
#endif
    default:
      break;
  }
  throw std::invalid_argument("simd path unavailable");
}

const Ops& ops() {
  static const Ops& t = ops(active_path());
  return t;
}

}  // namespace mbv::simd
