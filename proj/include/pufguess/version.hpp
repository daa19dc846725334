#pragma once

namespace pufguess {

inline constexpr const char* kToolName = "pufguess";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace pufguess
