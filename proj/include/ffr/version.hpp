#pragma once

namespace ffr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ffr
