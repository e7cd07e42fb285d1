#pragma once

namespace symindex {

inline constexpr const char* kToolName = "symindex";
inline constexpr const char* kVersion = "0.1.0";

} // namespace symindex
