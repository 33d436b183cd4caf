#if defined(__aarch64__)

#include "simd_kernels.hpp"
#include "vec_neon.hpp"

namespace mbv::simd::detail {

Ops make_neon_ops() { return make_ops<VecNeon>(Path::neon); }

}  // namespace mbv::simd::detail

#endif
