#pragma once

namespace windest {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "windest";

}  // namespace windest
