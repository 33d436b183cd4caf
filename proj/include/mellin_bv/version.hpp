#pragma once

namespace mbv {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace mbv
