#include "simd_kernels.hpp"
#include "vec_scalar.hpp"

namespace mbv::simd::detail {

Ops make_scalar_ops() { return make_ops<VecScalar>(Path::scalar); }

}  // namespace mbv::simd::detail
