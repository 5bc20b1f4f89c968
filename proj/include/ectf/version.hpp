#pragma once

namespace ectf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ectf
