// Compiled with -mavx2 -mfma (see CMakeLists); only reached after the
// dispatcher has checked cpu support at runtime.

#if defined(__x86_64__) || defined(_M_X64)

#include "simd_kernels.hpp"
#include "vec_avx2.hpp"

namespace mbv::simd::detail {

Ops make_avx2_ops() { return make_ops<VecAvx2>(Path::avx2); }

}  // namespace mbv::simd::detail

#endif
