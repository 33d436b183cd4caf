#pragma once

// Gamma via a Lanczos approximation (g = 7, 9 terms), good to ~14 digits on
// the arguments used here (half-integers and small reals). Kept hand-rolled
// so kernel normalization constants do not depend on libm's tgamma quality.

namespace mbv {

double gamma_fn(double x);

}  // namespace mbv
