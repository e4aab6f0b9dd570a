#pragma once

namespace dp7 {

inline constexpr const char* kToolName = "dp7";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace dp7
