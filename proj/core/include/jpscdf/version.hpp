#pragma once

namespace jps {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jps
