#pragma once

namespace ckepler {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ckepler
